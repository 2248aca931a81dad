#pragma once

// Inverse reading of the rules: all rule instances whose conclusion is
// exactly a given sequent, paired with the premises they require.

#include "lambek/rules.hpp"

namespace lambek {

struct Expansion {
  RuleTag rule;
  std::vector<Sequent> premises;
};

// Enumerates every instance of a rule of `sys` concluding `goal`. Structural
// rules (Perm1/Perm2/Contr) are enumerated only when `contr_allowed`; the
// prover replaces explicit permutation search by implicit matching, and this
// flag keeps the two callers consistent. Cut is never enumerated.
inline std::vector<Expansion> backward_expansions(const Sequent& goal,
                                                  const System& sys,
                                                  bool contr_allowed) {
  sys.validate();
  std::vector<Expansion> out;
  const auto& ante = goal.antecedent;
  const int n = static_cast<int>(ante.size());
  const bool bang_sys = sys.structural_allowed();
  auto slice = [&](int from, int to) {
    return std::vector<Formula>(ante.begin() + from, ante.begin() + to);
  };

  if (n == 1 && ante[0] == goal.succedent)
    out.push_back({RuleTag::axiom(), {}});

  if (goal.succedent.is_over()) {
    std::vector<Formula> a = ante;
    a.push_back(goal.succedent.denominator());
    out.push_back({RuleTag::over_right(),
                   {Sequent(std::move(a), goal.succedent.numerator())}});
  }
  if (goal.succedent.is_under()) {
    std::vector<Formula> a{goal.succedent.denominator()};
    a.insert(a.end(), ante.begin(), ante.end());
    out.push_back({RuleTag::under_right(),
                   {Sequent(std::move(a), goal.succedent.numerator())}});
  }

  for (int pos = 0; pos < n; ++pos) {
    const Formula& f = ante[pos];
    if (f.is_over()) {
      for (int len = 0; pos + len < n; ++len) {
        std::vector<Formula> right = slice(0, pos);
        right.push_back(f.numerator());
        auto tail = slice(pos + 1 + len, n);
        right.insert(right.end(), tail.begin(), tail.end());
        out.push_back({RuleTag::over_left(pos, len),
                       {Sequent(slice(pos + 1, pos + 1 + len), f.denominator()),
                        Sequent(std::move(right), goal.succedent)}});
      }
    }
    if (f.is_under()) {
      for (int len = 0; len <= pos; ++len) {
        std::vector<Formula> right = slice(0, pos - len);
        right.push_back(f.numerator());
        auto tail = slice(pos + 1, n);
        right.insert(right.end(), tail.begin(), tail.end());
        out.push_back({RuleTag::under_left(pos, len),
                       {Sequent(slice(pos - len, pos), f.denominator()),
                        Sequent(std::move(right), goal.succedent)}});
      }
    }
    if (bang_sys && f.is_bang()) {
      std::vector<Formula> a = ante;
      a[pos] = f.body();
      out.push_back(
          {RuleTag::bang_left(pos), {Sequent(std::move(a), goal.succedent)}});
    }
  }

  if (bang_sys && goal.succedent.is_bang()) {
    bool all_banged = true;
    for (const auto& f : ante) all_banged = all_banged && f.is_bang();
    if (all_banged)
      out.push_back(
          {RuleTag::bang_right(), {Sequent(ante, goal.succedent.body())}});
  }

  if (bang_sys && contr_allowed) {
    for (int pos = 0; pos < n; ++pos) {
      if (!ante[pos].is_bang()) continue;
      std::vector<Formula> a = ante;
      a.insert(a.begin() + pos, ante[pos]);
      out.push_back(
          {RuleTag::contr(pos), {Sequent(std::move(a), goal.succedent)}});
    }
    // Perm1 conclusion has the moved formula at `to` with to > from; Perm2
    // with to < from. Every (from, to) pair with a banged formula at `to`.
    for (int to = 0; to < n; ++to) {
      if (!ante[to].is_bang()) continue;
      for (int from = 0; from < n; ++from) {
        if (from == to) continue;
        std::vector<Formula> a;
        a.reserve(n);
        for (int i = 0; i < n; ++i)
          if (i != to) a.push_back(ante[i]);
        a.insert(a.begin() + from, ante[to]);
        RuleTag tag = to > from ? RuleTag::perm1(from, to)
                                : RuleTag::perm2(from, to);
        out.push_back({tag, {Sequent(std::move(a), goal.succedent)}});
      }
    }
  }

  if (goal.succedent.is_var()) {
    for (int idx = 0; idx < static_cast<int>(sys.rules.size()); ++idx) {
      const BRule& r = sys.rules[idx];
      if (r.r != goal.succedent.atom()) continue;
      if (r.form == BRule::B1) {
        for (int split = 0; split <= n; ++split)
          out.push_back({RuleTag::b1(idx, split),
                         {Sequent(slice(0, split), Formula::var(r.p)),
                          Sequent(slice(split, n), Formula::var(r.q))}});
      } else {
        std::vector<Formula> a = ante;
        a.push_back(Formula::var(r.q));
        out.push_back(
            {RuleTag::b2(idx), {Sequent(std::move(a), Formula::var(r.p))}});
      }
    }
  }

  return out;
}

}  // namespace lambek
