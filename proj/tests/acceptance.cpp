// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits with the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lambek/encoding.hpp"
#include "lambek/transform.hpp"
#include "testutil.hpp"

using namespace lambek;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok,
            const std::string& detail) {
  std::cout << "criterion " << number << " (" << name
            << "): " << (ok ? "PASS" : "FAIL");
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!ok) ++failures;
}

long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int size_bound(const Sequent& s) {
  const int n = static_cast<int>(s.size());
  return 12 * n * n + 3 * n;
}

// ---------------------------------------------------------------- criterion 1

void golden_sequents() {
  struct Case {
    const char* text;
    int exact_perms;   // -1: unconstrained
    int exact_bangs;   // -1: unconstrained
    int min_contrs;
  };
  const Case cases[] = {
      {"np, (np\\s)/np, np -> s", -1, -1, 0},
      {"np/n, n, (n\\n)/(s/!np), np, (np\\s)/np -> np", -1, -1, 0},
      {"np/n, n, (n\\n)/(s/!np), np, (np\\s)/np, (np\\s)\\(np\\s) -> np", 1, 1,
       0},
      {"np/n, n, (n\\n)/(s/!np), np, (np\\s)/np, ((np\\s)\\(np\\s))/np, np/np "
       "-> np",
       -1, -1, 1},
  };
  bool ok = true;
  std::ostringstream detail;
  for (const Case& c : cases) {
    Sequent goal = parse_sequent(c.text);
    auto t0 = std::chrono::steady_clock::now();
    ProveResult r = decide_restricted(goal);
    long ms = ms_since(t0);
    if (!r.derivable()) {
      ok = false;
      detail << "not derivable: " << c.text << "; ";
      continue;
    }
    if (auto err = check_derivation(*r.derivation, System::bang_lstar())) {
      ok = false;
      detail << "invalid derivation for " << c.text << ": " << err->to_string()
             << "; ";
    }
    const int perms = r.derivation->count_rule(RuleKind::Perm1) +
                      r.derivation->count_rule(RuleKind::Perm2);
    const int bangs = r.derivation->count_rule(RuleKind::BangLeft);
    const int contrs = r.derivation->count_rule(RuleKind::Contr);
    if (c.exact_perms >= 0 && perms != c.exact_perms) {
      ok = false;
      detail << c.text << ": " << perms << " perm nodes; ";
    }
    if (c.exact_bangs >= 0 && bangs != c.exact_bangs) {
      ok = false;
      detail << c.text << ": " << bangs << " dereliction nodes; ";
    }
    if (contrs < c.min_contrs) {
      ok = false;
      detail << c.text << ": " << contrs << " contraction nodes; ";
    }
    if (ms >= 1000) {
      ok = false;
      detail << c.text << ": took " << ms << " ms; ";
    }
  }
  report(1, "golden linguistic sequents", ok, detail.str());
}

// ------------------------------------------------------- criteria 2, 3 and 4

struct SweepStats {
  long total = 0;
  long derivable = 0;
  long plain_mismatches = 0;   // prove(L*) vs oracle on bang-free sequents
  long modal_mismatches = 0;   // decide_restricted vs oracle, bang-on-vars
  long size_violations = 0;    // node count bound after normalize_perm_blocks
  long conservativity = 0;     // decide_restricted vs prove(L*) on bang-free
};

// Enumerates every sequent of total size <= max_size whose formulas are
// built over atoms {p, q}, with banged variables admitted when `with_bangs`.
void sweep(int max_size, bool with_bangs, SweepStats& st) {
  const Formula p = Formula::var(Atom::intern("p"));
  const Formula q = Formula::var(Atom::intern("q"));
  std::vector<std::vector<Formula>> by(max_size + 1);
  by[1] = {p, q};
  if (with_bangs && max_size >= 2) {
    by[2].push_back(Formula::bang(p));
    by[2].push_back(Formula::bang(q));
  }
  for (int s = 2; s <= max_size; ++s)
    for (int a = 1; a < s; ++a)
      for (const auto& f : by[a])
        for (const auto& g : by[s - a]) {
          by[s].push_back(Formula::over(f, g));
          by[s].push_back(Formula::under(g, f));
        }

  const System modal = System::bang_lstar();
  const System plain = System::lstar();
  const Budget plain_budget = Budget::generous(100000000);

  std::vector<Formula> ante;
  std::function<void(int)> rec = [&](int left) {
    for (int s = 1; s <= left; ++s)
      for (const auto& su : by[s]) {
        Sequent goal(ante, su);
        ++st.total;
        const int bound = size_bound(goal);

        ProveResult restricted = decide_restricted(goal);
        const bool oracle =
            brute_force_derivable(goal, with_bangs ? modal : plain, bound);

        if (with_bangs) {
          if (restricted.derivable() != oracle) ++st.modal_mismatches;
        } else {
          ProveResult pr = prove(goal, plain, plain_budget);
          if (pr.verdict == Verdict::Unknown || pr.derivable() != oracle)
            ++st.plain_mismatches;
          if (restricted.derivable() != pr.derivable()) ++st.conservativity;
        }
        if (restricted.derivable()) {
          ++st.derivable;
          auto d = normalize_perm_blocks(restricted.derivation);
          if (static_cast<int>(d->node_count()) >= bound)
            ++st.size_violations;
        }
      }
    for (int s = 1; s + 1 <= left; ++s)
      for (const auto& f : by[s]) {
        ante.push_back(f);
        rec(left - s);
        ante.pop_back();
      }
  };
  rec(max_size);
}

// ---------------------------------------------------------------- criterion 5

void cut_elimination_sample() {
  auto glue = [](const Sequent& left, const Sequent& right, int pos) {
    std::vector<Formula> ante(right.antecedent.begin(),
                              right.antecedent.begin() + pos);
    ante.insert(ante.end(), left.antecedent.begin(), left.antecedent.end());
    ante.insert(ante.end(), right.antecedent.begin() + pos + 1,
                right.antecedent.end());
    return Sequent(std::move(ante), right.succedent);
  };

  std::mt19937 rng(20240817);
  bool ok = true;
  std::ostringstream detail;
  int done = 0;
  while (done < 100) {
    RuleSet rs;
    const bool with_rules = done % 2 == 1;
    auto right =
        testutil::random_derivation(rng, 10, 10, with_rules ? &rs : nullptr, 3);
    const Sequent& rc = right->conclusion();
    if (rc.antecedent.empty()) continue;
    int pos = static_cast<int>(rng() % rc.antecedent.size());
    auto left = testutil::grow_antecedent(
        rng, Derivation::axiom(rc.antecedent[pos]), 1 + rng() % 3, 10);
    if (left->conclusion().size() > 10 || rc.size() > 10) continue;
    System sys = System::lstar_plus(rs);
    auto res = eliminate_cut(left, right, pos);
    if (res->contains_rule(RuleKind::Cut) || !checks(res, sys) ||
        !(res->conclusion() == glue(left->conclusion(), rc, pos))) {
      ok = false;
      detail << "pair " << done << " on "
             << format_sequent(left->conclusion()) << " / "
             << format_sequent(rc) << "; ";
    }
    ++done;
  }
  report(5, "cut elimination on random premise pairs", ok, detail.str());
}

// ---------------------------------------------------------------- criterion 6

BinaryGrammar make_g1() {
  const Atom s = Atom::intern("s"), t = Atom::intern("t");
  const Atom a = Atom::intern("a"), b = Atom::intern("b");
  BinaryGrammar g{{s, t}, {a, b}, s, {}};
  g.add_expand(s, a, b);
  g.add_expand(s, a, t);
  g.add_expand(t, s, b);
  return g;
}

void encoding_pipeline() {
  BinaryGrammar g1 = make_g1();
  BinaryGrammar g2 = make_g1();
  g2.add_reduce(Atom::intern("a"), Atom::intern("a"), Atom::intern("t"));

  bool ok = true;
  std::ostringstream detail;
  for (const BinaryGrammar* g : {&g1, &g2}) {
    const EncodedSystem enc = encode_grammar(*g);
    const std::vector<Formula> gam = gamma(enc.ruleset);
    const Atom a = Atom::intern("a"), b = Atom::intern("b");
    for (int len = 1; len <= 5; ++len)
      for (int mask = 0; mask < (1 << len); ++mask) {
        SymbolString w;
        std::vector<Formula> ante;
        for (int i = 0; i < len; ++i) {
          Atom sym = ((mask >> i) & 1) ? b : a;
          w.push_back(sym);
          ante.push_back(Formula::var(sym));
        }
        const Sequent goal(ante, Formula::var(g->start));
        auto word_text = [&] {
          std::string out;
          for (Atom sym : w) out += std::string(sym.name()) + " ";
          return out;
        };

        DeriveResult dr = derives(*g, w, g->start, 200000);
        if (dr.yes()) {
          auto d = grammar_to_derivation(enc, g->start, dr.trace);
          if (!checks(d, enc.system()) || !(d->conclusion() == goal)) {
            ok = false;
            detail << "bad rule derivation for " << word_text() << "; ";
          }
          DeductionResult ds =
              deduction_search(goal, enc.ruleset, Budget::generous(1000000));
          if (ds.status != DeductionStatus::Found) {
            ok = false;
            detail << "no deduction for " << word_text() << "; ";
            continue;
          }
          bool subset = true;
          for (const Formula& f : ds.bang_set)
            subset = subset &&
                     std::find(gam.begin(), gam.end(), f) != gam.end();
          if (!subset || !checks(ds.derivation, System::bang_lstar()) ||
              !(ds.derivation->conclusion() == embed(ds.bang_set, goal))) {
            ok = false;
            detail << "bad deduction for " << word_text() << "; ";
          }
        } else {
          DeductionResult ds =
              deduction_search(goal, enc.ruleset, Budget::generous(100000));
          if (ds.status == DeductionStatus::Found) {
            ok = false;
            detail << "false positive for " << word_text() << "; ";
          }
        }
      }
  }
  report(6, "grammar encoding pipeline", ok, detail.str());
}

// ---------------------------------------------------------------- criterion 7

void relevance_behavior() {
  bool ok = true;
  std::ostringstream detail;
  RuleSet rs;
  rs.add_b2(Atom::intern("p"), Atom::intern("q"), Atom::intern("r"));
  DeductionResult ds =
      deduction_search(parse_sequent("s -> s"), rs, Budget::generous());
  if (ds.status != DeductionStatus::Found || !ds.bang_set.empty() ||
      !checks(ds.derivation, System::bang_lstar())) {
    ok = false;
    detail << "s -> s did not settle with the empty set; ";
  }
  ProveResult r = prove(parse_sequent("!(r/(p/q)), s -> s"),
                        System::bang_lstar(), Budget::generous(100000));
  if (r.derivable()) {
    ok = false;
    detail << "!(r/(p/q)), s -> s reported derivable; ";
  }
  report(7, "irrelevant rule images stay out of the bang set", ok,
         detail.str());
}

// ---------------------------------------------------------------- criterion 8

void rule_axiom_equivalence() {
  bool ok = true;
  std::ostringstream detail;
  const Atom p = Atom::intern("p"), q = Atom::intern("q"),
             r = Atom::intern("r");
  {
    RuleSet rs;
    rs.add_b1(p, q, r);
    ProveResult res =
        prove(parse_sequent("p, q -> r"), System::lstar_plus(rs),
              Budget::generous());
    if (!res.derivable() ||
        !checks(res.derivation, System::lstar_plus(rs))) {
      ok = false;
      detail << "p, q -> r failed with the joining rule; ";
    }
  }
  {
    RuleSet rs;
    rs.add_b2(p, q, r);
    ProveResult res =
        prove(parse_sequent("p/q -> r"), System::lstar_plus(rs),
              Budget::generous());
    if (!res.derivable() ||
        !checks(res.derivation, System::lstar_plus(rs))) {
      ok = false;
      detail << "p/q -> r failed with the discharging rule; ";
    }
  }
  report(8, "rules behave like their axiom forms", ok, detail.str());
}

}  // namespace

int main() {
  golden_sequents();

  SweepStats plain_stats, modal_stats;
  sweep(7, /*with_bangs=*/false, plain_stats);
  sweep(7, /*with_bangs=*/true, modal_stats);
  {
    std::ostringstream detail;
    bool ok = plain_stats.plain_mismatches == 0 &&
              modal_stats.modal_mismatches == 0;
    if (!ok)
      detail << plain_stats.plain_mismatches << " divisible-only and "
             << modal_stats.modal_mismatches
             << " modal disagreements with the saturation oracle over "
             << (plain_stats.total + modal_stats.total) << " sequents";
    report(2, "prover agrees with the saturation oracle on all sequents up "
              "to size 7",
           ok, detail.str());
  }
  {
    long v = plain_stats.size_violations + modal_stats.size_violations;
    std::ostringstream detail;
    if (v) detail << v << " derivations at or above the 12n^2+3n node bound";
    report(3, "normalized derivations stay below the quadratic size bound",
           v == 0, detail.str());
  }
  {
    std::ostringstream detail;
    if (plain_stats.conservativity)
      detail << plain_stats.conservativity
             << " bang-free sequents with differing verdicts";
    report(4, "the modal system is conservative over bang-free sequents",
           plain_stats.conservativity == 0, detail.str());
  }

  cut_elimination_sample();
  encoding_pipeline();
  relevance_behavior();
  rule_axiom_equivalence();

  return failures;
}
