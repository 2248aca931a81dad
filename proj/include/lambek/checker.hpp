#pragma once

// Derivation checker: verifies that every node of a tree instantiates a rule
// of the given system exactly, using the position data carried by the tags.

#include "lambek/derivation.hpp"

namespace lambek {

struct CheckError {
  std::vector<int> path;  // premise indices from the root to the failing node
  std::string message;

  std::string to_string() const {
    std::string s = "at ";
    if (path.empty()) s += "root";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(path[i]);
    }
    return s + ": " + message;
  }
};

using CheckResult = std::optional<CheckError>;  // nullopt = ok

namespace detail {

inline std::optional<std::string> check_node(const Derivation& d,
                                             const System& sys) {
  const RuleTag& t = d.rule();
  const Sequent& c = d.conclusion();
  const auto& ante = c.antecedent;
  const int n = static_cast<int>(ante.size());
  auto premise = [&](int i) -> const Sequent& {
    return d.premises()[i]->conclusion();
  };
  auto structural = [&]() -> std::optional<std::string> {
    if (!sys.structural_allowed())
      return std::string(rule_name(t.kind)) + " is not a rule of this system";
    return std::nullopt;
  };
  auto slice = [&](int from, int to) {
    return std::vector<Formula>(ante.begin() + from, ante.begin() + to);
  };

  switch (t.kind) {
    case RuleKind::Axiom: {
      if (n != 1 || ante[0] != c.succedent)
        return std::string("axiom conclusion is not of the form A -> A");
      return std::nullopt;
    }

    case RuleKind::OverRight: {
      if (!c.succedent.is_over())
        return std::string("(->/) succedent is not a right division");
      std::vector<Formula> want = ante;
      want.push_back(c.succedent.denominator());
      if (premise(0) != Sequent(std::move(want), c.succedent.numerator()))
        return std::string("(->/) premise does not match Gamma, A -> B");
      return std::nullopt;
    }

    case RuleKind::UnderRight: {
      if (!c.succedent.is_under())
        return std::string("(->\\) succedent is not a left division");
      std::vector<Formula> want{c.succedent.denominator()};
      want.insert(want.end(), ante.begin(), ante.end());
      if (premise(0) != Sequent(std::move(want), c.succedent.numerator()))
        return std::string("(->\\) premise does not match A, Gamma -> B");
      return std::nullopt;
    }

    case RuleKind::OverLeft: {
      if (t.pos < 0 || t.pos >= n || t.aux < 0 || t.pos + t.aux >= n)
        return std::string("(/->) position data out of bounds");
      const Formula& principal = ante[t.pos];
      if (!principal.is_over())
        return std::string("(/->) principal formula is not a right division");
      if (premise(0) != Sequent(slice(t.pos + 1, t.pos + 1 + t.aux),
                                principal.denominator()))
        return std::string("(/->) first premise does not match Gamma -> A");
      std::vector<Formula> want = slice(0, t.pos);
      want.push_back(principal.numerator());
      auto tail = slice(t.pos + 1 + t.aux, n);
      want.insert(want.end(), tail.begin(), tail.end());
      if (premise(1) != Sequent(std::move(want), c.succedent))
        return std::string(
            "(/->) second premise does not match Delta1, B, Delta2 -> C");
      return std::nullopt;
    }

    case RuleKind::UnderLeft: {
      if (t.pos < 0 || t.pos >= n || t.aux < 0 || t.pos - t.aux < 0)
        return std::string("(\\->) position data out of bounds");
      const Formula& principal = ante[t.pos];
      if (!principal.is_under())
        return std::string("(\\->) principal formula is not a left division");
      if (premise(0) !=
          Sequent(slice(t.pos - t.aux, t.pos), principal.denominator()))
        return std::string("(\\->) first premise does not match Gamma -> A");
      std::vector<Formula> want = slice(0, t.pos - t.aux);
      want.push_back(principal.numerator());
      auto tail = slice(t.pos + 1, n);
      want.insert(want.end(), tail.begin(), tail.end());
      if (premise(1) != Sequent(std::move(want), c.succedent))
        return std::string(
            "(\\->) second premise does not match Delta1, B, Delta2 -> C");
      return std::nullopt;
    }

    case RuleKind::BangLeft: {
      if (auto e = structural()) return e;
      if (t.pos < 0 || t.pos >= n)
        return std::string("(!->) position out of bounds");
      if (!ante[t.pos].is_bang())
        return std::string("(!->) principal formula is not banged");
      std::vector<Formula> want = ante;
      want[t.pos] = ante[t.pos].body();
      if (premise(0) != Sequent(std::move(want), c.succedent))
        return std::string("(!->) premise does not match Gamma1, A, Gamma2 -> C");
      return std::nullopt;
    }

    case RuleKind::BangRight: {
      if (auto e = structural()) return e;
      if (!c.succedent.is_bang())
        return std::string("(->!) succedent is not banged");
      for (const auto& f : ante)
        if (!f.is_bang())
          return std::string(
              "(->!) premise antecedent contains a non-banged formula");
      if (premise(0) != Sequent(ante, c.succedent.body()))
        return std::string("(->!) premise does not match !A1..!An -> B");
      return std::nullopt;
    }

    case RuleKind::Perm1:
    case RuleKind::Perm2: {
      if (auto e = structural()) return e;
      const int from = t.pos, to = t.aux;
      if (from < 0 || from >= n || to < 0 || to >= n)
        return std::string("(perm) position out of bounds");
      if (t.kind == RuleKind::Perm1 && !(from < to))
        return std::string("(perm1) must move a banged formula rightwards");
      if (t.kind == RuleKind::Perm2 && !(to < from))
        return std::string("(perm2) must move a banged formula leftwards");
      if (!ante[to].is_bang())
        return std::string("(perm) moved formula is not banged");
      // Premise = conclusion with the element at `to` moved back to `from`.
      std::vector<Formula> want;
      want.reserve(n);
      for (int i = 0; i < n; ++i)
        if (i != to) want.push_back(ante[i]);
      want.insert(want.begin() + from, ante[to]);
      if (premise(0) != Sequent(std::move(want), c.succedent))
        return std::string("(perm) premise does not match the moved sequent");
      return std::nullopt;
    }

    case RuleKind::Contr: {
      if (auto e = structural()) return e;
      if (t.pos < 0 || t.pos >= n)
        return std::string("(contr) position out of bounds");
      if (!ante[t.pos].is_bang())
        return std::string("(contr) contracted formula is not banged");
      std::vector<Formula> want = ante;
      want.insert(want.begin() + t.pos, ante[t.pos]);
      if (premise(0) != Sequent(std::move(want), c.succedent))
        return std::string(
            "(contr) premise does not duplicate the contracted formula");
      return std::nullopt;
    }

    case RuleKind::B1: {
      if (t.rule_index < 0 ||
          t.rule_index >= static_cast<int>(sys.rules.size()))
        return std::string("(B1) rule index outside the rule set");
      const BRule& r = sys.rules[t.rule_index];
      if (r.form != BRule::B1)
        return std::string("(B1) indexed rule is not of form B1");
      if (!(c.succedent.is_var() && c.succedent.atom() == r.r))
        return std::string("(B1) succedent is not the rule's r");
      if (t.aux < 0 || t.aux > n) return std::string("(B1) split out of bounds");
      if (premise(0) != Sequent(slice(0, t.aux), Formula::var(r.p)))
        return std::string("(B1) first premise does not match Pi1 -> p");
      if (premise(1) != Sequent(slice(t.aux, n), Formula::var(r.q)))
        return std::string("(B1) second premise does not match Pi2 -> q");
      return std::nullopt;
    }

    case RuleKind::B2: {
      if (t.rule_index < 0 ||
          t.rule_index >= static_cast<int>(sys.rules.size()))
        return std::string("(B2) rule index outside the rule set");
      const BRule& r = sys.rules[t.rule_index];
      if (r.form != BRule::B2)
        return std::string("(B2) indexed rule is not of form B2");
      if (!(c.succedent.is_var() && c.succedent.atom() == r.r))
        return std::string("(B2) succedent is not the rule's r");
      std::vector<Formula> want = ante;
      want.push_back(Formula::var(r.q));
      if (premise(0) != Sequent(std::move(want), Formula::var(r.p)))
        return std::string("(B2) premise does not match Pi, q -> p");
      return std::nullopt;
    }

    case RuleKind::Cut: {
      if (!sys.allow_cut)
        return std::string("(cut) is not admitted by this system");
      const Sequent& left = premise(0);
      const int plen = static_cast<int>(left.antecedent.size());
      if (t.pos < 0 || t.pos + plen > n)
        return std::string("(cut) window out of bounds");
      if (slice(t.pos, t.pos + plen) != left.antecedent)
        return std::string("(cut) window does not match Pi");
      std::vector<Formula> want = slice(0, t.pos);
      want.push_back(left.succedent);
      auto tail = slice(t.pos + plen, n);
      want.insert(want.end(), tail.begin(), tail.end());
      if (premise(1) != Sequent(std::move(want), c.succedent))
        return std::string(
            "(cut) second premise does not match Delta1, A, Delta2 -> C");
      return std::nullopt;
    }
  }
  return std::string("unknown rule");
}

inline CheckResult check_rec(const Derivation& d, const System& sys,
                             std::vector<int>& path) {
  if (static_cast<int>(d.premises().size()) != d.rule().arity())
    return CheckError{path, "premise count does not match rule arity"};
  if (auto msg = check_node(d, sys)) return CheckError{path, *msg};
  for (std::size_t i = 0; i < d.premises().size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto err = check_rec(*d.premises()[i], sys, path)) return err;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace detail

inline CheckResult check_derivation(const Derivation& d, const System& sys) {
  sys.validate();
  std::vector<int> path;
  return detail::check_rec(d, sys, path);
}

inline bool checks(const DerivationPtr& d, const System& sys) {
  return d && !check_derivation(*d, sys).has_value();
}

}  // namespace lambek
