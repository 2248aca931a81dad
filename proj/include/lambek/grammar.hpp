#pragma once

// Binary grammars (productions expand one symbol into two or reduce two into
// one) and a breadth-first rewriting engine used as ground truth for the
// encoding tests.

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "lambek/core.hpp"

namespace lambek {

// Expand: w => v1 v2.  Reduce: v1 v2 => w.
struct Production {
  enum Kind : std::uint8_t { Expand, Reduce };
  Kind kind;
  Atom v1, v2, w;

  friend bool operator==(const Production& a, const Production& b) {
    return a.kind == b.kind && a.v1 == b.v1 && a.v2 == b.v2 && a.w == b.w;
  }
};

struct BinaryGrammar {
  std::vector<Atom> nonterminals;
  std::vector<Atom> terminals;
  Atom start;
  std::vector<Production> productions;

  bool is_nonterminal(Atom a) const {
    return std::find(nonterminals.begin(), nonterminals.end(), a) !=
           nonterminals.end();
  }
  bool is_terminal(Atom a) const {
    return std::find(terminals.begin(), terminals.end(), a) != terminals.end();
  }
  bool is_symbol(Atom a) const { return is_nonterminal(a) || is_terminal(a); }

  // N followed by Sigma, in declaration order.
  std::vector<Atom> symbols() const {
    std::vector<Atom> out = nonterminals;
    out.insert(out.end(), terminals.begin(), terminals.end());
    return out;
  }

  void add_expand(Atom w, Atom v1, Atom v2) {
    productions.push_back({Production::Expand, v1, v2, w});
  }
  void add_reduce(Atom v1, Atom v2, Atom w) {
    productions.push_back({Production::Reduce, v1, v2, w});
  }

  void validate() const {
    for (Atom n : nonterminals)
      if (is_terminal(n))
        throw std::invalid_argument("grammar: symbol `" + n.name() +
                                    "` is both a nonterminal and a terminal");
    if (!is_nonterminal(start))
      throw std::invalid_argument("grammar: start symbol is not a nonterminal");
    for (const auto& p : productions)
      for (Atom a : {p.v1, p.v2, p.w})
        if (!is_symbol(a))
          throw std::invalid_argument("grammar: production uses unknown symbol `" +
                                      a.name() + "`");
  }
};

struct RewriteStep {
  int production;  // index into BinaryGrammar::productions
  int pos;         // index of the replaced symbol (of v1 for a reduction)

  friend bool operator==(const RewriteStep& a, const RewriteStep& b) {
    return a.production == b.production && a.pos == b.pos;
  }
};

using RewriteTrace = std::vector<RewriteStep>;
using SymbolString = std::vector<Atom>;

// Single substitution: eta alpha theta => eta beta theta.
inline SymbolString rewrite_step(const SymbolString& word,
                                 const Production& prod, int pos) {
  const int n = static_cast<int>(word.size());
  SymbolString out;
  if (prod.kind == Production::Expand) {
    if (pos < 0 || pos >= n || word[pos] != prod.w)
      throw std::invalid_argument("rewrite_step: left side does not occur at pos");
    out.assign(word.begin(), word.begin() + pos);
    out.push_back(prod.v1);
    out.push_back(prod.v2);
    out.insert(out.end(), word.begin() + pos + 1, word.end());
  } else {
    if (pos < 0 || pos + 1 >= n || word[pos] != prod.v1 ||
        word[pos + 1] != prod.v2)
      throw std::invalid_argument("rewrite_step: left side does not occur at pos");
    out.assign(word.begin(), word.begin() + pos);
    out.push_back(prod.w);
    out.insert(out.end(), word.begin() + pos + 2, word.end());
  }
  return out;
}

inline SymbolString replay_trace(const BinaryGrammar& g, Atom from,
                                 const RewriteTrace& trace) {
  SymbolString word{from};
  for (const auto& step : trace) {
    if (step.production < 0 ||
        step.production >= static_cast<int>(g.productions.size()))
      throw std::invalid_argument("trace: production index out of range");
    word = rewrite_step(word, g.productions[step.production], step.pos);
  }
  return word;
}

enum class DeriveStatus : std::uint8_t { Yes, No, Unknown };

struct DeriveResult {
  DeriveStatus status;
  RewriteTrace trace;  // replayable from `from` to `target` when Yes

  bool yes() const { return status == DeriveStatus::Yes; }
};

// Breadth-first closure of =>_G from `from`, looking for `target`. Expand
// steps grow the string by one symbol and reduce steps shrink it by one, so
// without reduce productions anything longer than the target is dead; with
// them the overlength slack is bounded by the step budget. No is reported
// only when the reachable set under that cap is exhausted, Unknown when
// more than `step_budget` strings were expanded first.
inline DeriveResult derives(const BinaryGrammar& g, const SymbolString& target,
                            Atom from, long step_budget) {
  g.validate();
  if (target.empty())
    throw std::invalid_argument("derives: empty target is not generable");
  const bool can_shrink =
      std::any_of(g.productions.begin(), g.productions.end(),
                  [](const Production& p) { return p.kind == Production::Reduce; });
  const std::size_t cap =
      target.size() + (can_shrink ? static_cast<std::size_t>(step_budget) : 0);

  std::map<SymbolString, std::pair<SymbolString, RewriteStep>> parent;
  std::deque<SymbolString> queue;
  SymbolString root{from};
  parent.emplace(root, std::make_pair(SymbolString{}, RewriteStep{-1, -1}));
  queue.push_back(root);

  auto trace_to = [&](SymbolString word) {
    RewriteTrace trace;
    while (true) {
      const auto& [prev, step] = parent.at(word);
      if (step.production < 0) break;
      trace.push_back(step);
      word = prev;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
  };

  long expanded = 0;
  while (!queue.empty()) {
    SymbolString word = queue.front();
    queue.pop_front();
    if (word == target) return {DeriveStatus::Yes, trace_to(word)};
    if (++expanded > step_budget) return {DeriveStatus::Unknown, {}};
    const int n = static_cast<int>(word.size());
    for (int pi = 0; pi < static_cast<int>(g.productions.size()); ++pi) {
      const Production& p = g.productions[pi];
      for (int pos = 0; pos < n; ++pos) {
        bool applies = p.kind == Production::Expand
                           ? word[pos] == p.w
                           : pos + 1 < n && word[pos] == p.v1 &&
                                 word[pos + 1] == p.v2;
        if (!applies) continue;
        SymbolString next = rewrite_step(word, p, pos);
        if (next.size() > cap) continue;
        if (parent.count(next)) continue;
        parent.emplace(next, std::make_pair(word, RewriteStep{pi, pos}));
        queue.push_back(next);
      }
    }
  }
  return {DeriveStatus::No, {}};
}

// The footnote transformation for a single-symbol production u => v: adds
// u => w1 w2 and w1 w2 => v with fresh nonterminals w1, w2.
inline void add_unit_production(BinaryGrammar& g, Atom u, Atom v,
                                FreshAtoms& fresh) {
  Atom w1 = fresh.next("w"), w2 = fresh.next("w");
  g.nonterminals.push_back(w1);
  g.nonterminals.push_back(w2);
  g.add_expand(u, w1, w2);
  g.add_reduce(w1, w2, v);
}

// Line-oriented grammar text: `nonterminals: s t`, `terminals: a b`,
// `start: s`, productions `w => v1 v2` / `v1 v2 => w`, '#' comments.
inline BinaryGrammar read_grammar(std::istream& is) {
  BinaryGrammar g{{}, {}, Atom::intern("?"), {}};
  bool have_start = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("grammar line " + std::to_string(lineno) + ": " +
                             msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    auto atoms = [&](std::size_t begin) {
      std::vector<Atom> out;
      for (std::size_t i = begin; i < tokens.size(); ++i)
        out.push_back(Atom::intern(tokens[i]));
      return out;
    };
    if (tokens[0] == "nonterminals:") {
      auto a = atoms(1);
      g.nonterminals.insert(g.nonterminals.end(), a.begin(), a.end());
    } else if (tokens[0] == "terminals:") {
      auto a = atoms(1);
      g.terminals.insert(g.terminals.end(), a.begin(), a.end());
    } else if (tokens[0] == "start:") {
      if (tokens.size() != 2) fail("expected `start: <symbol>`");
      g.start = Atom::intern(tokens[1]);
      have_start = true;
    } else if (tokens.size() == 4 && tokens[1] == "=>") {
      g.add_expand(Atom::intern(tokens[0]), Atom::intern(tokens[2]),
                   Atom::intern(tokens[3]));
    } else if (tokens.size() == 4 && tokens[2] == "=>") {
      g.add_reduce(Atom::intern(tokens[0]), Atom::intern(tokens[1]),
                   Atom::intern(tokens[3]));
    } else {
      fail("unrecognized line");
    }
  }
  if (!have_start) throw std::runtime_error("grammar: missing `start:` line");
  g.validate();
  return g;
}

inline void write_grammar(std::ostream& os, const BinaryGrammar& g) {
  os << "nonterminals:";
  for (Atom a : g.nonterminals) os << ' ' << a.name();
  os << "\nterminals:";
  for (Atom a : g.terminals) os << ' ' << a.name();
  os << "\nstart: " << g.start.name() << '\n';
  for (const auto& p : g.productions) {
    if (p.kind == Production::Expand)
      os << p.w.name() << " => " << p.v1.name() << ' ' << p.v2.name() << '\n';
    else
      os << p.v1.name() << ' ' << p.v2.name() << " => " << p.w.name() << '\n';
  }
}

}  // namespace lambek
