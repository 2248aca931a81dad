#pragma once

// Constructive cut elimination for L* and L* extended with Buszkowski rules.
//
// eliminate_cut takes cut-free derivations of Pi -> A and of
// Delta1, A, Delta2 -> C (with A at index `pos`) and produces a cut-free
// derivation of Delta1, Pi, Delta2 -> C. The recursion either permutes the
// cut above the rule that does not have A principal, or, when A is principal
// on both sides, replaces the cut by two cuts on the immediate subformulas.
// It terminates because each step reduces (|A|, combined tree height).
//
// Structural rules of !L* are outside its scope.

#include "lambek/derivation.hpp"

namespace lambek {

inline DerivationPtr eliminate_cut(const DerivationPtr& left,
                                   const DerivationPtr& right, int pos) {
  const Sequent& ls = left->conclusion();
  const Sequent& rs = right->conclusion();
  const Formula a = ls.succedent;
  const int n = static_cast<int>(rs.antecedent.size());
  if (pos < 0 || pos >= n || rs.antecedent[pos] != a)
    throw std::invalid_argument("eliminate_cut: cut formula mismatch");

  const int plen = static_cast<int>(ls.antecedent.size());
  const int d = plen - 1;  // length change where A becomes Pi

  // Conclusion of the (eliminated) cut.
  auto glued = [&]() {
    std::vector<Formula> ante(rs.antecedent.begin(),
                              rs.antecedent.begin() + pos);
    ante.insert(ante.end(), ls.antecedent.begin(), ls.antecedent.end());
    ante.insert(ante.end(), rs.antecedent.begin() + pos + 1,
                rs.antecedent.end());
    return Sequent(std::move(ante), rs.succedent);
  };

  const RuleTag& rt = right->rule();

  if (rt.kind == RuleKind::Axiom) return left;

  const bool principal_in_right =
      (rt.kind == RuleKind::OverLeft || rt.kind == RuleKind::UnderLeft) &&
      rt.pos == pos;

  if (!principal_in_right) {
    // Permute the cut above the right rule; A sits intact in one premise.
    const auto& prem = right->premises();
    switch (rt.kind) {
      case RuleKind::OverRight:
        return Derivation::make(rt, glued(),
                                {eliminate_cut(left, prem[0], pos)});
      case RuleKind::UnderRight:
        return Derivation::make(rt, glued(),
                                {eliminate_cut(left, prem[0], pos + 1)});
      case RuleKind::OverLeft: {
        const int k = rt.pos, s = rt.aux;
        if (pos < k)
          return Derivation::make(RuleTag::over_left(k + d, s), glued(),
                                  {prem[0], eliminate_cut(left, prem[1], pos)});
        if (pos <= k + s)
          return Derivation::make(
              RuleTag::over_left(k, s + d), glued(),
              {eliminate_cut(left, prem[0], pos - k - 1), prem[1]});
        return Derivation::make(
            RuleTag::over_left(k, s), glued(),
            {prem[0], eliminate_cut(left, prem[1], pos - s)});
      }
      case RuleKind::UnderLeft: {
        const int k = rt.pos, s = rt.aux;
        if (pos < k - s)
          return Derivation::make(RuleTag::under_left(k + d, s), glued(),
                                  {prem[0], eliminate_cut(left, prem[1], pos)});
        if (pos < k)
          // Gamma sits left of the principal, so the principal index moves.
          return Derivation::make(
              RuleTag::under_left(k + d, s + d), glued(),
              {eliminate_cut(left, prem[0], pos - (k - s)), prem[1]});
        return Derivation::make(
            RuleTag::under_left(k, s), glued(),
            {prem[0], eliminate_cut(left, prem[1], pos - s)});
      }
      case RuleKind::B1: {
        const int s = rt.aux;
        if (pos < s)
          return Derivation::make(RuleTag::b1(rt.rule_index, s + d), glued(),
                                  {eliminate_cut(left, prem[0], pos), prem[1]});
        return Derivation::make(
            RuleTag::b1(rt.rule_index, s), glued(),
            {prem[0], eliminate_cut(left, prem[1], pos - s)});
      }
      case RuleKind::B2:
        return Derivation::make(rt, glued(),
                                {eliminate_cut(left, prem[0], pos)});
      default:
        throw std::logic_error(
            std::string("eliminate_cut: unsupported rule in derivation: ") +
            rule_name(rt.kind));
    }
  }

  const RuleTag& lt = left->rule();

  if (lt.kind == RuleKind::Axiom) return right;

  if (lt.kind == RuleKind::OverRight || lt.kind == RuleKind::UnderRight) {
    // Principal on both sides: two cuts on the immediate subformulas.
    if (a.is_over()) {
      // left: Pi', F -> E gives Pi' -> E/F;   right premises: Gamma -> F
      // and Delta1, E, Delta2 -> C with E/F principal.
      const auto& gamma_prem = right->premises()[0];
      const auto& body_prem = right->premises()[1];
      DerivationPtr cut1 =
          eliminate_cut(gamma_prem, left->premises()[0], plen);
      return eliminate_cut(cut1, body_prem, pos);
    }
    // a is F\E: left premise F, Pi' -> E; right Gamma -> F at k-s.
    const auto& gamma_prem = right->premises()[0];
    const auto& body_prem = right->premises()[1];
    DerivationPtr cut1 = eliminate_cut(gamma_prem, left->premises()[0], 0);
    return eliminate_cut(cut1, body_prem, pos - rt.aux);
  }

  if (lt.kind == RuleKind::OverLeft || lt.kind == RuleKind::UnderLeft) {
    // Permute the cut above the left rule, into its succedent premise, then
    // reapply the rule shifted into the right context.
    DerivationPtr inner = eliminate_cut(left->premises()[1], right, pos);
    RuleTag tag = lt.kind == RuleKind::OverLeft
                      ? RuleTag::over_left(lt.pos + pos, lt.aux)
                      : RuleTag::under_left(lt.pos + pos, lt.aux);
    return Derivation::make(tag, glued(), {left->premises()[0], inner});
  }

  // A division principal in the right premise has a division as cut formula,
  // so the left rule cannot conclude an atomic succedent here.
  throw std::logic_error(
      std::string("eliminate_cut: unsupported left rule: ") +
      rule_name(lt.kind));
}

// Replaces every Cut node of `d` bottom-up.
inline DerivationPtr eliminate_cuts(const DerivationPtr& d) {
  std::vector<DerivationPtr> premises;
  premises.reserve(d->premises().size());
  bool changed = false;
  for (const auto& p : d->premises()) {
    premises.push_back(eliminate_cuts(p));
    if (premises.back() != p) changed = true;
  }
  if (d->rule().kind == RuleKind::Cut)
    return eliminate_cut(premises[0], premises[1], d->rule().pos);
  if (!changed) return d;
  return Derivation::make(d->rule(), d->conclusion(), std::move(premises));
}

}  // namespace lambek
