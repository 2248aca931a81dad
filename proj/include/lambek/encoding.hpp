#pragma once

// Grammar-to-ruleset encoding and the constructive translations between the
// three formalisms: binary grammars, L* with Buszkowski rules, and !L*.
//
// A reduce production v1 v2 => w is encoded per pair (production, flag
// symbol x) through marker-movement rules (1p)-(7p); the rules that are not
// in Buszkowski form are decomposed into one B1 plus one or two B2 with
// fresh u atoms. Rules (2p), (4p) and (6p) are schemas over every symbol y,
// so each pair contributes 7 + 6*|N u Sigma| rules.

#include <map>

#include <json.hpp>

#include "lambek/cut.hpp"
#include "lambek/grammar.hpp"
#include "lambek/oracle.hpp"
#include "lambek/prover.hpp"

namespace lambek {

struct PairContext {
  int production;  // index of the reduce production
  Atom x;          // flag symbol
  Atom a, b, c, e, f;
  std::map<Atom, Atom> tilde;  // y -> marked copy of y

  struct MovePair {
    int b2 = -1;
    int b1 = -1;
  };
  int r1 = -1;                       // (1p): B1(e, x, a)
  std::map<Atom, MovePair> r2;       // (2p)_y
  int r3_b2_v2 = -1, r3_b2_v1 = -1;  // (3p) decomposition
  int r3_b1 = -1;
  std::map<Atom, MovePair> r4;       // (4p)_y
  MovePair r5;                       // (5p)
  std::map<Atom, MovePair> r6;       // (6p)_y
  int r7 = -1;                       // (7p): B2(c, f, x)
};

struct EncodedSystem {
  BinaryGrammar grammar;
  RuleSet ruleset;
  std::vector<int> expand_rule;  // per production: E-rule index, or -1
  std::vector<PairContext> pairs;

  System system() const { return System::lstar_plus(ruleset); }

  const PairContext& pair(int production, Atom x) const {
    for (const auto& p : pairs)
      if (p.production == production && p.x == x) return p;
    throw std::invalid_argument("no pair context for production/flag symbol");
  }
};

// Deterministic encoding: expand productions first (one B1 each), then one
// pair per (reduce production, symbol) in declaration order.
inline EncodedSystem encode_grammar(const BinaryGrammar& g) {
  g.validate();
  EncodedSystem enc{g, {}, {}, {}};
  FreshAtoms fresh;
  RuleSet& rs = enc.ruleset;

  enc.expand_rule.assign(g.productions.size(), -1);
  for (std::size_t pi = 0; pi < g.productions.size(); ++pi) {
    const Production& p = g.productions[pi];
    if (p.kind != Production::Expand) continue;
    enc.expand_rule[pi] = static_cast<int>(rs.size());
    rs.add_b1(p.v1, p.v2, p.w);
  }

  const std::vector<Atom> symbols = g.symbols();
  for (std::size_t pi = 0; pi < g.productions.size(); ++pi) {
    const Production& p = g.productions[pi];
    if (p.kind != Production::Reduce) continue;
    for (Atom x : symbols) {
      const std::string pair_id = std::to_string(pi) + "_" + x.name();
      PairContext ctx;
      ctx.production = static_cast<int>(pi);
      ctx.x = x;
      ctx.a = fresh.named("a" + pair_id);
      ctx.b = fresh.named("b" + pair_id);
      ctx.c = fresh.named("c" + pair_id);
      ctx.e = fresh.named("e" + pair_id);
      ctx.f = fresh.named("f" + pair_id);
      for (Atom y : symbols)
        ctx.tilde[y] = fresh.named(y.name() + "~" + pair_id);

      auto add = [&](auto fn) {
        int idx = static_cast<int>(rs.size());
        fn();
        return idx;
      };
      // A rule {D1 -> p'; D2, q' -> r'} |- D1, D2 -> t decomposes into
      // B2: D, q' -> r' |- D -> u  and  B1: D1 -> p', D2 -> u |- D1, D2 -> t.
      auto add_move = [&](Atom pp, Atom qq, Atom rr, Atom t) {
        PairContext::MovePair mp;
        Atom u = fresh.next("u");
        mp.b2 = add([&] { rs.add_b2(rr, qq, u); });
        mp.b1 = add([&] { rs.add_b1(pp, u, t); });
        return mp;
      };

      ctx.r1 = add([&] { rs.add_b1(ctx.e, x, ctx.a); });
      for (Atom y : symbols) ctx.r2[y] = add_move(ctx.tilde[y], y, ctx.a, ctx.a);
      {
        Atom u1 = fresh.next("u");
        ctx.r3_b2_v2 = add([&] { rs.add_b2(ctx.a, p.v2, u1); });
        Atom u2 = fresh.next("u");
        ctx.r3_b2_v1 = add([&] { rs.add_b2(u1, p.v1, u2); });
        ctx.r3_b1 = add([&] { rs.add_b1(ctx.tilde[p.w], u2, ctx.b); });
      }
      for (Atom y : symbols) ctx.r4[y] = add_move(ctx.tilde[y], y, ctx.b, ctx.b);
      ctx.r5 = add_move(ctx.f, ctx.e, ctx.b, ctx.c);
      for (Atom y : symbols)
        ctx.r6[y] = add_move(y, ctx.tilde[y], ctx.c, ctx.c);
      ctx.r7 = add([&] { rs.add_b2(ctx.c, ctx.f, x); });

      enc.pairs.push_back(std::move(ctx));
    }
  }
  return enc;
}

namespace detail {

// B2 node consuming the trailing antecedent formula of `prev`.
inline DerivationPtr b2_consume(const RuleSet& rs, const DerivationPtr& prev,
                                int idx) {
  const auto& ante = prev->conclusion().antecedent;
  std::vector<Formula> concl(ante.begin(), ante.end() - 1);
  return Derivation::make(RuleTag::b2(idx),
                          Sequent(std::move(concl), Formula::var(rs[idx].r)),
                          {prev});
}

// B1 node prepending the rule's first premise atom (closed by an axiom).
inline DerivationPtr b1_prepend(const RuleSet& rs, const DerivationPtr& prev,
                                int idx) {
  Formula head = Formula::var(rs[idx].p);
  std::vector<Formula> concl{head};
  const auto& ante = prev->conclusion().antecedent;
  concl.insert(concl.end(), ante.begin(), ante.end());
  return Derivation::make(RuleTag::b1(idx, 1),
                          Sequent(std::move(concl), Formula::var(rs[idx].r)),
                          {Derivation::axiom(head), prev});
}

// The displayed reduce-step simulation: from a derivation of the
// pre-reduction string (v1, v2 at `pos`) to one of the post-reduction
// string, moving the marker through (1p), (2p)*, (3p), (4p)*, (5p), (6p)*,
// (7p), all in decomposed form.
inline DerivationPtr reduce_derivation(const EncodedSystem& enc,
                                       const PairContext& ctx,
                                       DerivationPtr d,
                                       const SymbolString& post, int pos) {
  const RuleSet& rs = enc.ruleset;
  const int m = static_cast<int>(post.size());
  d = b1_prepend(rs, d, ctx.r1);
  for (int i = m - 1; i > pos; --i) {
    const auto& mp = ctx.r2.at(post[i]);
    d = b1_prepend(rs, b2_consume(rs, d, mp.b2), mp.b1);
  }
  d = b2_consume(rs, d, ctx.r3_b2_v2);
  d = b2_consume(rs, d, ctx.r3_b2_v1);
  d = b1_prepend(rs, d, ctx.r3_b1);
  for (int i = pos - 1; i >= 0; --i) {
    const auto& mp = ctx.r4.at(post[i]);
    d = b1_prepend(rs, b2_consume(rs, d, mp.b2), mp.b1);
  }
  d = b1_prepend(rs, b2_consume(rs, d, ctx.r5.b2), ctx.r5.b1);
  for (int i = m - 1; i >= 0; --i) {
    const auto& mp = ctx.r6.at(post[i]);
    d = b1_prepend(rs, b2_consume(rs, d, mp.b2), mp.b1);
  }
  return b2_consume(rs, d, ctx.r7);
}

}  // namespace detail

// Builds, by induction on the trace, a cut-free derivation of
// "z1, ..., zm -> from" where z1 ... zm is the trace's final string.
inline DerivationPtr grammar_to_derivation(const EncodedSystem& enc, Atom from,
                                           const RewriteTrace& trace) {
  DerivationPtr d = Derivation::axiom(Formula::var(from));
  SymbolString word{from};
  for (const auto& step : trace) {
    if (step.production < 0 ||
        step.production >= static_cast<int>(enc.grammar.productions.size()))
      throw std::invalid_argument("trace: production index out of range");
    const Production& p = enc.grammar.productions[step.production];
    SymbolString next = rewrite_step(word, p, step.pos);  // validates pos
    if (p.kind == Production::Expand) {
      const int idx = enc.expand_rule[step.production];
      Formula v1 = Formula::var(p.v1), v2 = Formula::var(p.v2);
      auto enode = Derivation::make(
          RuleTag::b1(idx, 1), Sequent({v1, v2}, Formula::var(p.w)),
          {Derivation::axiom(v1), Derivation::axiom(v2)});
      d = eliminate_cut(enode, d, step.pos);
    } else {
      const PairContext& ctx = enc.pair(step.production, from);
      d = detail::reduce_derivation(enc, ctx, d, next, step.pos);
    }
    word = std::move(next);
  }
  return d;
}

// The formula image of a rule set: B1(p,q,r) -> (r/q)/p, B2(p,q,r) ->
// r/(p/q); duplicates collapsed, order follows the rule order.
inline Formula gamma_formula(const BRule& r) {
  Formula p = Formula::var(r.p), q = Formula::var(r.q), rr = Formula::var(r.r);
  return r.form == BRule::B1 ? Formula::over(Formula::over(rr, q), p)
                             : Formula::over(rr, Formula::over(p, q));
}

inline std::vector<Formula> gamma(const RuleSet& rs) {
  std::vector<Formula> out;
  for (const auto& r : rs) {
    Formula f = gamma_formula(r);
    if (std::find(out.begin(), out.end(), f) == out.end())
      out.push_back(std::move(f));
  }
  return out;
}

// !B1, ..., !Bn, (goal antecedent) -> (goal succedent).
inline Sequent embed(const std::vector<Formula>& bang_set,
                     const Sequent& goal) {
  std::vector<Formula> ante;
  ante.reserve(bang_set.size() + goal.antecedent.size());
  for (const auto& f : bang_set) ante.push_back(Formula::bang(f));
  ante.insert(ante.end(), goal.antecedent.begin(), goal.antecedent.end());
  return Sequent(std::move(ante), goal.succedent);
}

struct Translation {
  std::vector<Formula> bang_set;  // subset of gamma(R), in gamma order
  DerivationPtr derivation;       // !L* derivation of embed(bang_set, goal)
};

namespace detail {

class BangTranslator {
 public:
  explicit BangTranslator(const RuleSet& rs) : rs_(rs), gamma_(gamma(rs)) {
    for (std::size_t i = 0; i < rs.size(); ++i) {
      Formula f = gamma_formula(rs[i]);
      rule_to_gamma_.push_back(static_cast<int>(
          std::find(gamma_.begin(), gamma_.end(), f) - gamma_.begin()));
    }
  }

  struct Piece {
    std::vector<int> bangs;  // sorted gamma indices
    DerivationPtr d;
  };

  const std::vector<Formula>& gamma_set() const { return gamma_; }

  std::vector<Formula> formulas(const std::vector<int>& bangs) const {
    std::vector<Formula> out;
    for (int i : bangs) out.push_back(gamma_[i]);
    return out;
  }

  Piece translate(const DerivationPtr& d) {
    const RuleTag& t = d->rule();
    const Sequent& c = d->conclusion();
    switch (t.kind) {
      case RuleKind::Axiom:
        return {{}, d};

      case RuleKind::OverRight: {
        Piece p = translate(d->premises()[0]);
        return {p.bangs,
                Derivation::make(t, embed(formulas(p.bangs), c), {p.d})};
      }

      case RuleKind::UnderRight: {
        Piece p = translate(d->premises()[0]);
        std::vector<Formula> want{c.succedent.denominator()};
        Sequent target = embed(formulas(p.bangs), c);
        want.insert(want.end(), target.antecedent.begin(),
                    target.antecedent.end());
        return {p.bangs, Derivation::make(t, target, {rearrange(p.d, want)})};
      }

      case RuleKind::OverLeft: {
        Piece p1 = translate(d->premises()[0]);
        Piece p2 = translate(d->premises()[1]);
        const auto& a1 = p1.d->conclusion().antecedent;
        const auto& a2 = p2.d->conclusion().antecedent;
        const int k = static_cast<int>(p2.bangs.size()) + t.pos;
        std::vector<Formula> concl(a2.begin(), a2.begin() + k);
        concl.push_back(c.antecedent[t.pos]);
        concl.insert(concl.end(), a1.begin(), a1.end());
        concl.insert(concl.end(), a2.begin() + k + 1, a2.end());
        auto node = Derivation::make(
            RuleTag::over_left(k, static_cast<int>(a1.size())),
            Sequent(std::move(concl), c.succedent), {p1.d, p2.d});
        return finish(merge(p1.bangs, p2.bangs), node, c);
      }

      case RuleKind::UnderLeft: {
        Piece p1 = translate(d->premises()[0]);
        Piece p2 = translate(d->premises()[1]);
        const auto& a1 = p1.d->conclusion().antecedent;
        const auto& a2 = p2.d->conclusion().antecedent;
        const int k = static_cast<int>(p2.bangs.size()) + (t.pos - t.aux);
        std::vector<Formula> concl(a2.begin(), a2.begin() + k);
        concl.insert(concl.end(), a1.begin(), a1.end());
        concl.push_back(c.antecedent[t.pos]);
        concl.insert(concl.end(), a2.begin() + k + 1, a2.end());
        auto node = Derivation::make(
            RuleTag::under_left(k + static_cast<int>(a1.size()),
                                static_cast<int>(a1.size())),
            Sequent(std::move(concl), c.succedent), {p1.d, p2.d});
        return finish(merge(p1.bangs, p2.bangs), node, c);
      }

      case RuleKind::B1: {
        const BRule& r = rs_[t.rule_index];
        Piece p1 = translate(d->premises()[0]);
        Piece p2 = translate(d->premises()[1]);
        Formula rr = Formula::var(r.r);
        Formula rq = Formula::over(rr, Formula::var(r.q));
        Formula g = Formula::over(rq, Formula::var(r.p));
        const auto& a1 = p1.d->conclusion().antecedent;
        const auto& a2 = p2.d->conclusion().antecedent;
        // r/q, Pi2' -> r  from  Pi2' -> q  and  r -> r
        std::vector<Formula> s1{rq};
        s1.insert(s1.end(), a2.begin(), a2.end());
        auto n1 = Derivation::make(
            RuleTag::over_left(0, static_cast<int>(a2.size())),
            Sequent(std::move(s1), rr), {p2.d, Derivation::axiom(rr)});
        // (r/q)/p, Pi1', Pi2' -> r
        std::vector<Formula> s2{g};
        s2.insert(s2.end(), a1.begin(), a1.end());
        s2.insert(s2.end(), a2.begin(), a2.end());
        auto n2 = Derivation::make(
            RuleTag::over_left(0, static_cast<int>(a1.size())),
            Sequent(std::move(s2), rr), {p1.d, n1});
        auto n3 = banged_head(n2, g);
        return finish(merge(merge(p1.bangs, p2.bangs),
                            {rule_to_gamma_[t.rule_index]}),
                      n3, c);
      }

      case RuleKind::B2: {
        const BRule& r = rs_[t.rule_index];
        Piece p1 = translate(d->premises()[0]);
        Formula rr = Formula::var(r.r);
        Formula pq = Formula::over(Formula::var(r.p), Formula::var(r.q));
        Formula g = Formula::over(rr, pq);
        const auto& a1 = p1.d->conclusion().antecedent;
        // Pi' -> p/q  from  Pi', q -> p
        std::vector<Formula> s1(a1.begin(), a1.end() - 1);
        auto n1 = Derivation::make(RuleTag::over_right(),
                                   Sequent(std::move(s1), pq), {p1.d});
        // r/(p/q), Pi' -> r
        const auto& b1a = n1->conclusion().antecedent;
        std::vector<Formula> s2{g};
        s2.insert(s2.end(), b1a.begin(), b1a.end());
        auto n2 = Derivation::make(
            RuleTag::over_left(0, static_cast<int>(b1a.size())),
            Sequent(std::move(s2), rr), {n1, Derivation::axiom(rr)});
        auto n3 = banged_head(n2, g);
        return finish(merge(p1.bangs, {rule_to_gamma_[t.rule_index]}), n3, c);
      }

      default:
        throw std::invalid_argument(
            std::string("translate_to_bang: unsupported rule in input: ") +
            rule_name(t.kind));
    }
  }

 private:
  static std::vector<int> merge(const std::vector<int>& a,
                                const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out));
    return out;
  }

  // (!->) node turning the leading formula g into !g.
  DerivationPtr banged_head(const DerivationPtr& prev, const Formula& g) {
    std::vector<Formula> ante = prev->conclusion().antecedent;
    ante[0] = Formula::bang(g);
    return Derivation::make(
        RuleTag::bang_left(0),
        Sequent(std::move(ante), prev->conclusion().succedent), {prev});
  }

  Piece finish(std::vector<int> bangs, const DerivationPtr& node,
               const Sequent& original) {
    Sequent target = embed(formulas(bangs), original);
    return {std::move(bangs), restructure_bangs(node, target)};
  }

  const RuleSet& rs_;
  std::vector<Formula> gamma_;
  std::vector<int> rule_to_gamma_;
};

}  // namespace detail

// Constructive deduction-theorem direction: from a cut-free L*+R derivation
// to a !L* derivation of the embedded sequent, with B the set of gamma
// images of the rules actually used.
inline Translation translate_to_bang(const DerivationPtr& d,
                                     const RuleSet& rs) {
  detail::BangTranslator tr(rs);
  auto piece = tr.translate(d);
  return {tr.formulas(piece.bangs), piece.d};
}

enum class DeductionStatus : std::uint8_t { Found, NotFound, Unknown };

struct DeductionResult {
  DeductionStatus status;
  std::vector<Formula> bang_set;  // valid iff Found
  DerivationPtr derivation;       // valid iff Found
};

// Searches for a subset B of gamma(R) making embed(B, goal) derivable in
// !L*. By the deduction theorem such a B exists exactly when the goal is
// derivable in L*+R, so the search runs on that side first: a success is
// translated constructively, a definitive failure settles NotFound, and the
// much slower subset-by-subset iteration (increasing cardinality, then
// lexicographic) only runs as a fallback when the rule image is small.
inline DeductionResult deduction_search(const Sequent& goal, const RuleSet& rs,
                                        const Budget& budget) {
  ProveResult direct = prove(goal, System::lstar_plus(rs), budget);
  if (direct.derivable()) {
    Translation t = translate_to_bang(direct.derivation, rs);
    return {DeductionStatus::Found, std::move(t.bang_set), t.derivation};
  }
  if (direct.verdict == Verdict::NotDerivable)
    return {DeductionStatus::NotFound, {}, nullptr};

  // The backward search can drown in long B2 chains even when a small
  // derivation exists; forward saturation handles exactly those cases, and
  // its derivation is translated the same way.
  {
    const int n = static_cast<int>(goal.size());
    // Underivable goals saturate all the way to the state cap, and the
    // saturation cost grows faster than linearly in it, so the fallback gets
    // a modest cap of its own: enough for the small derivations the backward
    // search misses, cheap enough to give up on when nothing is there.
    long cap = 25000;
    if (budget.max_nodes > 0) cap = std::min(cap, budget.max_nodes);
    try {
      DerivationPtr d = brute_force_derivation(goal, System::lstar_plus(rs),
                                               12 * n * n + 3 * n, cap);
      if (d) {
        Translation t = translate_to_bang(d, rs);
        return {DeductionStatus::Found, std::move(t.bang_set), t.derivation};
      }
    } catch (const OracleOverflow&) {
      // fall through to the subset iteration / Unknown
    }
  }

  const std::vector<Formula> g = gamma(rs);
  const std::size_t n = g.size();
  if (n <= 12) {
    bool any_unknown = false;
    for (std::size_t card = 0; card <= n; ++card) {
      std::vector<int> pick(card);
      for (std::size_t i = 0; i < card; ++i) pick[i] = static_cast<int>(i);
      while (true) {
        std::vector<Formula> b;
        for (int i : pick) b.push_back(g[i]);
        ProveResult r = prove(embed(b, goal), System::bang_lstar(), budget);
        if (r.derivable())
          return {DeductionStatus::Found, std::move(b), r.derivation};
        if (r.verdict == Verdict::Unknown) any_unknown = true;
        // next combination
        std::size_t i = card;
        while (i > 0 &&
               pick[i - 1] == static_cast<int>(n - card + i - 1))
          --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < card; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    return {any_unknown ? DeductionStatus::Unknown : DeductionStatus::NotFound,
            {},
            nullptr};
  }
  return {DeductionStatus::Unknown, {}, nullptr};
}

// Audit view of the pair table.
inline nlohmann::ordered_json pair_table_json(const EncodedSystem& enc) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  auto move_json = [](const PairContext::MovePair& mp) {
    return nlohmann::ordered_json{{"b2", mp.b2}, {"b1", mp.b1}};
  };
  for (const auto& ctx : enc.pairs) {
    nlohmann::ordered_json j;
    j["production"] = ctx.production;
    j["flag"] = ctx.x.name();
    j["atoms"] = {{"a", ctx.a.name()},
                  {"b", ctx.b.name()},
                  {"c", ctx.c.name()},
                  {"e", ctx.e.name()},
                  {"f", ctx.f.name()}};
    nlohmann::ordered_json tilde;
    for (const auto& [y, ty] : ctx.tilde) tilde[y.name()] = ty.name();
    j["tilde"] = std::move(tilde);
    j["rule_1"] = ctx.r1;
    nlohmann::ordered_json r2;
    for (const auto& [y, mp] : ctx.r2) r2[y.name()] = move_json(mp);
    j["rule_2"] = std::move(r2);
    j["rule_3"] = {{"b2_v2", ctx.r3_b2_v2},
                   {"b2_v1", ctx.r3_b2_v1},
                   {"b1", ctx.r3_b1}};
    nlohmann::ordered_json r4;
    for (const auto& [y, mp] : ctx.r4) r4[y.name()] = move_json(mp);
    j["rule_4"] = std::move(r4);
    j["rule_5"] = move_json(ctx.r5);
    nlohmann::ordered_json r6;
    for (const auto& [y, mp] : ctx.r6) r6[y.name()] = move_json(mp);
    j["rule_6"] = std::move(r6);
    j["rule_7"] = ctx.r7;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace lambek
