#pragma once

// Inference systems: the rule vocabulary, Buszkowski rule sets, and system
// descriptors (L*, !L*, L*+R).

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "lambek/core.hpp"

namespace lambek {

enum class RuleKind : std::uint8_t {
  Axiom,
  OverRight,   // (->/)
  OverLeft,    // (/->)
  UnderRight,  // (->\)
  UnderLeft,   // (\->)
  BangLeft,    // (!->)
  BangRight,   // (->!)
  Perm1,
  Perm2,
  Contr,
  B1,
  B2,
  Cut,
};

inline const char* rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::Axiom: return "axiom";
    case RuleKind::OverRight: return "over_right";
    case RuleKind::OverLeft: return "over_left";
    case RuleKind::UnderRight: return "under_right";
    case RuleKind::UnderLeft: return "under_left";
    case RuleKind::BangLeft: return "bang_left";
    case RuleKind::BangRight: return "bang_right";
    case RuleKind::Perm1: return "perm1";
    case RuleKind::Perm2: return "perm2";
    case RuleKind::Contr: return "contr";
    case RuleKind::B1: return "b1";
    case RuleKind::B2: return "b2";
    case RuleKind::Cut: return "cut";
  }
  return "?";
}

inline std::optional<RuleKind> rule_from_name(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(RuleKind::Cut); ++i) {
    auto k = static_cast<RuleKind>(i);
    if (s == rule_name(k)) return k;
  }
  return std::nullopt;
}

// Rule application tag with enough position data to make checking a
// derivation node deterministic (no search).
//
// Meaning of the fields per kind:
//   OverLeft / UnderLeft: pos = index of the principal formula in the
//     conclusion antecedent, aux = length of the Gamma segment (to the right
//     of pos for /, to the left for \).
//   BangLeft: pos = index of the principal !A.
//   Perm1 / Perm2: pos = index of the moved formula in the premise,
//     aux = its index in the conclusion (Perm1: aux > pos, Perm2: aux < pos).
//   Contr: pos = index of the contracted formula in the conclusion.
//   B1: rule_index into the RuleSet, aux = length of Pi_1.
//   B2: rule_index into the RuleSet.
//   Cut: pos = start of the substitution window (length of Delta_1).
struct RuleTag {
  RuleKind kind;
  int pos = -1;
  int aux = -1;
  int rule_index = -1;

  static RuleTag axiom() { return {RuleKind::Axiom}; }
  static RuleTag over_right() { return {RuleKind::OverRight}; }
  static RuleTag under_right() { return {RuleKind::UnderRight}; }
  static RuleTag over_left(int pos, int gamma_len) {
    return {RuleKind::OverLeft, pos, gamma_len};
  }
  static RuleTag under_left(int pos, int gamma_len) {
    return {RuleKind::UnderLeft, pos, gamma_len};
  }
  static RuleTag bang_left(int pos) { return {RuleKind::BangLeft, pos}; }
  static RuleTag bang_right() { return {RuleKind::BangRight}; }
  static RuleTag perm1(int from, int to) { return {RuleKind::Perm1, from, to}; }
  static RuleTag perm2(int from, int to) { return {RuleKind::Perm2, from, to}; }
  static RuleTag contr(int pos) { return {RuleKind::Contr, pos}; }
  static RuleTag b1(int rule_index, int split) {
    return {RuleKind::B1, -1, split, rule_index};
  }
  static RuleTag b2(int rule_index) { return {RuleKind::B2, -1, -1, rule_index}; }
  static RuleTag cut(int window_start) { return {RuleKind::Cut, window_start}; }

  int arity() const {
    switch (kind) {
      case RuleKind::Axiom: return 0;
      case RuleKind::OverLeft:
      case RuleKind::UnderLeft:
      case RuleKind::B1:
      case RuleKind::Cut: return 2;
      default: return 1;
    }
  }

  friend bool operator==(const RuleTag& a, const RuleTag& b) {
    return a.kind == b.kind && a.pos == b.pos && a.aux == b.aux &&
           a.rule_index == b.rule_index;
  }
};

// One Buszkowski rule over fixed primitive types.
//   B1(p, q, r):  Pi_1 -> p,  Pi_2 -> q  |-  Pi_1, Pi_2 -> r
//   B2(p, q, r):  Pi, q -> p             |-  Pi -> r
struct BRule {
  enum Form : std::uint8_t { B1, B2 };
  Form form;
  Atom p, q, r;

  friend bool operator==(const BRule& a, const BRule& b) {
    return a.form == b.form && a.p == b.p && a.q == b.q && a.r == b.r;
  }
};

struct RuleSet {
  std::vector<BRule> rules;

  bool empty() const { return rules.empty(); }
  std::size_t size() const { return rules.size(); }
  const BRule& operator[](std::size_t i) const { return rules[i]; }
  auto begin() const { return rules.begin(); }
  auto end() const { return rules.end(); }

  void add_b1(Atom p, Atom q, Atom r) { rules.push_back({BRule::B1, p, q, r}); }
  void add_b2(Atom p, Atom q, Atom r) { rules.push_back({BRule::B2, p, q, r}); }

  friend bool operator==(const RuleSet& a, const RuleSet& b) {
    return a.rules == b.rules;
  }
};

enum class BaseCalculus : std::uint8_t { LStar, BangLStar };

// L* (optionally extended with Buszkowski rules) or !L*. Nothing here needs
// !L* combined with a rule set, so that combination is rejected.
struct System {
  BaseCalculus base = BaseCalculus::LStar;
  RuleSet rules;
  bool allow_cut = false;  // checker-only; provers never emit Cut

  static System lstar() { return {BaseCalculus::LStar, {}, false}; }
  static System bang_lstar() { return {BaseCalculus::BangLStar, {}, false}; }
  static System lstar_plus(RuleSet r) {
    return {BaseCalculus::LStar, std::move(r), false};
  }

  bool structural_allowed() const { return base == BaseCalculus::BangLStar; }

  void validate() const {
    if (base == BaseCalculus::BangLStar && !rules.empty())
      throw std::invalid_argument("!L* cannot carry a Buszkowski rule set");
  }
};

// Rule set text format: one rule per line, `B1 p q r` / `B2 p q r`,
// '#' comments and blank lines ignored.
inline void write_ruleset(std::ostream& os, const RuleSet& rs) {
  for (const auto& r : rs.rules)
    os << (r.form == BRule::B1 ? "B1 " : "B2 ") << r.p.name() << ' '
       << r.q.name() << ' ' << r.r.name() << '\n';
}

inline RuleSet read_ruleset(std::istream& is) {
  RuleSet rs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string form, p, q, r;
    if (!(ls >> form)) continue;
    if (!(ls >> p >> q >> r) || (form != "B1" && form != "B2"))
      throw std::runtime_error("ruleset line " + std::to_string(lineno) +
                               ": expected `B1 p q r` or `B2 p q r`");
    if (form == "B1")
      rs.add_b1(Atom::intern(p), Atom::intern(q), Atom::intern(r));
    else
      rs.add_b2(Atom::intern(p), Atom::intern(q), Atom::intern(r));
  }
  return rs;
}

}  // namespace lambek
