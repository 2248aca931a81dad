#pragma once

// Structural-rule plumbing: synthesizing minimal permutation chains,
// merging duplicated banged formulas, and normalizing permutation blocks
// inside finished derivations.

#include <algorithm>
#include <unordered_map>

#include "lambek/checker.hpp"

namespace lambek {

// Wraps `d` with one permutation node moving the antecedent element at
// `from` to `to`. The element must be banged.
inline DerivationPtr apply_perm(const DerivationPtr& d, int from, int to) {
  const Sequent& s = d->conclusion();
  std::vector<Formula> ante = s.antecedent;
  Formula moved = ante[from];
  if (!moved.is_bang())
    throw std::logic_error("apply_perm: moved formula is not banged");
  ante.erase(ante.begin() + from);
  ante.insert(ante.begin() + to, moved);
  RuleTag tag = to > from ? RuleTag::perm1(from, to) : RuleTag::perm2(from, to);
  return Derivation::make(tag, Sequent(std::move(ante), s.succedent), {d});
}

// Wraps `d` with a contraction node merging the adjacent duplicate at
// `pos`, `pos + 1`.
inline DerivationPtr apply_contr(const DerivationPtr& d, int pos) {
  const Sequent& s = d->conclusion();
  if (s.antecedent[pos] != s.antecedent[pos + 1] || !s.antecedent[pos].is_bang())
    throw std::logic_error("apply_contr: no adjacent banged duplicate");
  std::vector<Formula> ante = s.antecedent;
  ante.erase(ante.begin() + pos);
  return Derivation::make(RuleTag::contr(pos), Sequent(std::move(ante), s.succedent),
                          {d});
}

// Permutes the conclusion of `d` into `target`, moving only banged formulas.
// `target` must have the same formula multiset and the same relative order
// of non-banged formulas as d's conclusion. Settles target slots left to
// right: a banged slot pulls its formula leftwards; a non-banged slot pushes
// the banged formulas blocking it rightwards past it.
inline DerivationPtr rearrange(DerivationPtr d,
                               const std::vector<Formula>& target) {
  std::vector<Formula> cur = d->conclusion().antecedent;
  const std::size_t n = cur.size();
  if (n != target.size())
    throw std::logic_error("rearrange: antecedent lengths differ");
  for (std::size_t j = 0; j < n; ++j) {
    if (cur[j] == target[j]) continue;
    if (target[j].is_bang()) {
      std::size_t i = j + 1;
      while (i < n && cur[i] != target[j]) ++i;
      if (i == n)
        throw std::logic_error("rearrange: banged formula missing from source");
      d = apply_perm(d, static_cast<int>(i), static_cast<int>(j));
    } else {
      std::size_t i = j;
      while (i < n && cur[i].is_bang()) ++i;
      if (i == n || cur[i] != target[j])
        throw std::logic_error(
            "rearrange: non-banged formulas are not in target order");
      while (cur[j] != target[j]) {
        // cur[j] is banged; send it just past the blocked formula at i.
        d = apply_perm(d, static_cast<int>(j), static_cast<int>(i));
        cur = d->conclusion().antecedent;
      }
      continue;
    }
    cur = d->conclusion().antecedent;
  }
  return d;
}

// Permutes and contracts the conclusion of `d` into `target`. The target may
// merge duplicated banged formulas; non-banged formulas must appear in the
// same order, banged counts in the target must not exceed those in `d`.
inline DerivationPtr restructure_bangs(DerivationPtr d, const Sequent& target) {
  const auto& cur = d->conclusion().antecedent;
  std::unordered_map<Formula, int, FormulaHash> surplus;
  for (const auto& f : cur)
    if (f.is_bang()) ++surplus[f];
  for (const auto& f : target.antecedent)
    if (f.is_bang()) --surplus[f];

  // Interleaving of the target with the extra copies placed adjacent to the
  // first occurrence of their formula.
  std::vector<Formula> expanded;
  auto pending = surplus;
  for (const auto& f : target.antecedent) {
    expanded.push_back(f);
    if (f.is_bang()) {
      auto it = pending.find(f);
      if (it != pending.end() && it->second > 0) {
        for (int k = 0; k < it->second; ++k) expanded.push_back(f);
        it->second = 0;
      }
    }
  }
  d = rearrange(std::move(d), expanded);
  // Merge the adjacent duplicates left to right.
  for (auto& [f, extra] : surplus) {
    (void)f;
    if (extra < 0)
      throw std::logic_error("restructure_bangs: target has surplus bangs");
  }
  while (d->conclusion().antecedent.size() > target.antecedent.size()) {
    const auto& a = d->conclusion().antecedent;
    bool merged = false;
    for (std::size_t j = 0; j + 1 < a.size(); ++j) {
      if (a[j].is_bang() && a[j] == a[j + 1]) {
        d = apply_contr(d, static_cast<int>(j));
        merged = true;
        break;
      }
    }
    if (!merged)
      throw std::logic_error("restructure_bangs: no adjacent duplicate to merge");
  }
  if (d->conclusion() != target)
    throw std::logic_error("restructure_bangs: did not reach the target");
  return d;
}

// Replaces every maximal run of consecutive permutation nodes by a minimal
// block in which each displaced banged formula is moved exactly once.
// Conclusion-preserving and idempotent.
inline DerivationPtr normalize_perm_blocks(const DerivationPtr& d) {
  auto is_perm = [](const DerivationPtr& n) {
    return n->rule().kind == RuleKind::Perm1 || n->rule().kind == RuleKind::Perm2;
  };
  if (is_perm(d)) {
    DerivationPtr below = d;
    while (is_perm(below)) below = below->premises()[0];
    return rearrange(normalize_perm_blocks(below), d->conclusion().antecedent);
  }
  std::vector<DerivationPtr> premises;
  premises.reserve(d->premises().size());
  bool changed = false;
  for (const auto& p : d->premises()) {
    premises.push_back(normalize_perm_blocks(p));
    if (premises.back() != p) changed = true;
  }
  if (!changed) return d;
  return Derivation::make(d->rule(), d->conclusion(), std::move(premises));
}

}  // namespace lambek
