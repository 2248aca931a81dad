#pragma once

// Categorial-grammar front-end: lexicons mapping words to type formulas and
// sentence parsing through the prover.

#include <functional>
#include <map>

#include "lambek/prover.hpp"

namespace lambek {

struct Lexicon {
  // Word to nonempty list of type formulas (lexical ambiguity allowed).
  std::map<std::string, std::vector<Formula>> entries;

  void add(const std::string& word, const Formula& type) {
    if (word.empty())
      throw std::invalid_argument("lexicon: empty word");
    entries[word].push_back(type);
  }
  void add(const std::string& word, const std::string& type) {
    add(word, parse_formula(type));
  }

  const std::vector<Formula>& lookup(const std::string& word) const {
    auto it = entries.find(word);
    if (it == entries.end())
      throw std::invalid_argument("lexicon: unknown word `" + word + "`");
    return it->second;
  }
};

// The fixed demonstration lexicon: names and nouns, transitive and
// intransitive verbs, adverbs, and the relativizers whose types use the
// modality.
inline Lexicon builtin_lexicon() {
  Lexicon lex;
  for (const char* w : {"John", "Pete", "Mary", "Ann"}) lex.add(w, "np");
  for (const char* w : {"person", "paper", "book"}) lex.add(w, "n");
  lex.add("the", "np/n");
  for (const char* w : {"met", "likes", "reads", "signed"})
    lex.add(w, "(np\\s)/np");
  for (const char* w : {"runs", "sleeps"}) lex.add(w, "np\\s");
  for (const char* w : {"yesterday", "today"}) lex.add(w, "(np\\s)\\(np\\s)");
  for (const char* w : {"whom", "that"}) lex.add(w, "(n\\n)/(s/!np)");
  // A VP modifier like "yesterday" that also takes a noun phrase on the
  // right.
  lex.add("without", "((np\\s)\\(np\\s))/np");
  lex.add("reading", "np/np");
  return lex;
}

// Cartesian product of the per-word type assignments, in word order, each
// candidate paired with the target succedent.
inline std::vector<Sequent> sentence_to_sequents(
    const std::vector<std::string>& words, const Lexicon& lex,
    const Formula& target) {
  std::vector<std::vector<Formula>> choices;
  choices.reserve(words.size());
  for (const auto& w : words) choices.push_back(lex.lookup(w));
  std::vector<Sequent> out;
  std::vector<Formula> ante;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == words.size()) {
      out.emplace_back(ante, target);
      return;
    }
    for (const auto& f : choices[i]) {
      ante.push_back(f);
      rec(i + 1);
      ante.pop_back();
    }
  };
  rec(0);
  return out;
}

struct ParseOutcome {
  Sequent sequent;
  ProveResult result;
};

// Tries every candidate sequent in !L*. Candidates inside the
// bang-on-variables fragment go through the terminating decision procedure
// (definitive verdicts); others through budgeted search.
inline std::vector<ParseOutcome> parse_sentence(
    const std::vector<std::string>& words, const Lexicon& lex,
    const Formula& target, const Budget& budget) {
  std::vector<ParseOutcome> out;
  for (const auto& goal : sentence_to_sequents(words, lex, target)) {
    ProveResult r = classify(goal).bang_on_vars_only
                        ? decide_restricted(goal)
                        : prove(goal, System::bang_lstar(), budget);
    out.push_back({goal, std::move(r)});
  }
  return out;
}

inline bool parses(const std::vector<ParseOutcome>& outcomes) {
  for (const auto& o : outcomes)
    if (o.result.derivable()) return true;
  return false;
}

// Lexicon file: lines `word: formula`, '#' comments, blank lines ignored.
inline Lexicon read_lexicon(std::istream& is) {
  Lexicon lex;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto nonspace = line.find_first_not_of(" \t\r");
    if (nonspace == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("lexicon line " + std::to_string(lineno) +
                               ": expected `word: formula`");
    std::string word = line.substr(nonspace, colon - nonspace);
    while (!word.empty() && (word.back() == ' ' || word.back() == '\t'))
      word.pop_back();
    if (word.empty())
      throw std::runtime_error("lexicon line " + std::to_string(lineno) +
                               ": empty word");
    try {
      lex.add(word, parse_formula(line.substr(colon + 1)));
    } catch (const SyntaxError& e) {
      throw std::runtime_error("lexicon line " + std::to_string(lineno) +
                               ": " + e.what());
    }
  }
  return lex;
}

inline void write_lexicon(std::ostream& os, const Lexicon& lex) {
  for (const auto& [word, types] : lex.entries)
    for (const auto& t : types)
      os << word << ": " << format_formula(t) << '\n';
}

}  // namespace lambek
