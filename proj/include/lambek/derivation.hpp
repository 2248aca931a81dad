#pragma once

// Derivation trees and their canonical JSON form.

#include <memory>

#include <json.hpp>

#include "lambek/rules.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

// Node of a proof tree. Validity is a checkable property (see checker.hpp),
// not a construction-time guarantee.
class Derivation {
 public:
  using Ptr = std::shared_ptr<const Derivation>;

  static Ptr make(RuleTag rule, Sequent conclusion, std::vector<Ptr> premises) {
    if (static_cast<int>(premises.size()) != rule.arity())
      throw std::invalid_argument("premise count does not match rule arity");
    return std::make_shared<const Derivation>(rule, std::move(conclusion),
                                              std::move(premises));
  }
  static Ptr axiom(const Formula& f) {
    return make(RuleTag::axiom(), Sequent({f}, f), {});
  }

  Derivation(RuleTag rule, Sequent conclusion, std::vector<Ptr> premises)
      : rule_(rule),
        conclusion_(std::move(conclusion)),
        premises_(std::move(premises)) {}

  const RuleTag& rule() const { return rule_; }
  const Sequent& conclusion() const { return conclusion_; }
  const std::vector<Ptr>& premises() const { return premises_; }

  int node_count() const {
    int n = 1;
    for (const auto& p : premises_) n += p->node_count();
    return n;
  }

  bool contains_rule(RuleKind k) const {
    if (rule_.kind == k) return true;
    for (const auto& p : premises_)
      if (p->contains_rule(k)) return true;
    return false;
  }

  int count_rule(RuleKind k) const {
    int n = rule_.kind == k ? 1 : 0;
    for (const auto& p : premises_) n += p->count_rule(k);
    return n;
  }

  friend bool operator==(const Derivation& a, const Derivation& b) {
    if (!(a.rule_ == b.rule_) || a.conclusion_ != b.conclusion_ ||
        a.premises_.size() != b.premises_.size())
      return false;
    for (std::size_t i = 0; i < a.premises_.size(); ++i)
      if (!(*a.premises_[i] == *b.premises_[i])) return false;
    return true;
  }

 private:
  RuleTag rule_;
  Sequent conclusion_;
  std::vector<Ptr> premises_;
};

using DerivationPtr = Derivation::Ptr;

namespace detail {
inline std::vector<int> tag_positions(const RuleTag& t) {
  switch (t.kind) {
    case RuleKind::OverLeft:
    case RuleKind::UnderLeft:
    case RuleKind::Perm1:
    case RuleKind::Perm2: return {t.pos, t.aux};
    case RuleKind::BangLeft:
    case RuleKind::Contr:
    case RuleKind::Cut: return {t.pos};
    case RuleKind::B1: return {t.rule_index, t.aux};
    case RuleKind::B2: return {t.rule_index};
    default: return {};
  }
}

inline RuleTag tag_from(RuleKind k, const std::vector<int>& pos) {
  auto want = [&](std::size_t n) {
    if (pos.size() != n)
      throw std::runtime_error(std::string("rule ") + rule_name(k) +
                               ": wrong number of positions");
  };
  switch (k) {
    case RuleKind::OverLeft: want(2); return RuleTag::over_left(pos[0], pos[1]);
    case RuleKind::UnderLeft: want(2); return RuleTag::under_left(pos[0], pos[1]);
    case RuleKind::Perm1: want(2); return RuleTag::perm1(pos[0], pos[1]);
    case RuleKind::Perm2: want(2); return RuleTag::perm2(pos[0], pos[1]);
    case RuleKind::BangLeft: want(1); return RuleTag::bang_left(pos[0]);
    case RuleKind::Contr: want(1); return RuleTag::contr(pos[0]);
    case RuleKind::Cut: want(1); return RuleTag::cut(pos[0]);
    case RuleKind::B1: want(2); return RuleTag::b1(pos[0], pos[1]);
    case RuleKind::B2: want(1); return RuleTag::b2(pos[0]);
    default: want(0); return {k};
  }
}
}  // namespace detail

inline nlohmann::ordered_json to_json(const Derivation& d) {
  nlohmann::ordered_json j;
  j["rule"] = rule_name(d.rule().kind);
  j["positions"] = detail::tag_positions(d.rule());
  j["conclusion"] = format_sequent(d.conclusion());
  auto prems = nlohmann::ordered_json::array();
  for (const auto& p : d.premises()) prems.push_back(to_json(*p));
  j["premises"] = std::move(prems);
  return j;
}

inline DerivationPtr derivation_from_json(const nlohmann::json& j) {
  auto kind = rule_from_name(j.at("rule").get<std::string>());
  if (!kind) throw std::runtime_error("unknown rule name in derivation");
  RuleTag tag =
      detail::tag_from(*kind, j.at("positions").get<std::vector<int>>());
  Sequent concl = parse_sequent(j.at("conclusion").get<std::string>());
  std::vector<DerivationPtr> premises;
  for (const auto& pj : j.at("premises"))
    premises.push_back(derivation_from_json(pj));
  return Derivation::make(tag, std::move(concl), std::move(premises));
}

inline std::string serialize_derivation(const Derivation& d) {
  return to_json(d).dump(2);
}

inline DerivationPtr parse_derivation(std::string_view text) {
  return derivation_from_json(nlohmann::json::parse(text));
}

}  // namespace lambek
