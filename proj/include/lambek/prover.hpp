#pragma once

// Budgeted backward proof search for L*, !L* and L*+R, and the terminating
// decision procedure for the fragment where ! is applied only to variables.
//
// Permutation rules are never searched explicitly. In !L* a banged
// antecedent formula can be moved anywhere, so the search keeps banged
// formulas in a sorted multiset next to the ordered non-banged part and
// matches them at any position; the permutation nodes required by the rule
// shapes are synthesized into the emitted tree and minimized afterwards.
//
// Contraction is likewise folded into its use sites instead of being
// searched blindly: a banged formula may be sent to both premises of a
// branching rule, or retained while its body is released by (!->), and each
// such sharing re-emits one explicit contraction node in the proof tree.
// Every proof with explicit contractions normalizes to this shape because a
// contraction commutes upward until its two copies separate.
//
// Budgets are tree totals. The search minimizes the number of logical,
// Buszkowski and contraction nodes, which makes the budget compose across
// binary rules: the minimum for a branching node is the sum of the premise
// minima, because the premise subtrees are independent.

#include <limits>

#include "lambek/transform.hpp"

namespace lambek {

struct Budget {
  int max_logical_steps = 0;
  int max_contractions = 0;
  long max_nodes = 0;  // 0 = no cap on explored search states

  static Budget generous(long nodes = 1000000) {
    return {std::numeric_limits<int>::max() / 4,
            std::numeric_limits<int>::max() / 4, nodes};
  }
};

enum class Verdict : std::uint8_t { Derivable, NotDerivable, Unknown };

struct ProveResult {
  Verdict verdict;
  DerivationPtr derivation;  // set iff Derivable
  std::string reason;        // set iff Unknown

  bool derivable() const { return verdict == Verdict::Derivable; }
};

class FragmentViolation : public std::runtime_error {
 public:
  explicit FragmentViolation(const std::string& what)
      : std::runtime_error(what) {}
};

namespace detail {

struct NodesExhausted {};

class Searcher {
 public:
  Searcher(const System& sys, long max_nodes)
      : sys_(sys),
        floats_(sys.structural_allowed()),
        nodes_left_(max_nodes > 0 ? max_nodes
                                  : std::numeric_limits<long>::max()) {
    sys_.validate();
  }

  struct State {
    std::vector<Formula> bangs;  // sorted; empty unless bangs float
    std::vector<Formula> rest;
    Formula succ;

    Sequent canonical() const {
      std::vector<Formula> ante = bangs;
      ante.insert(ante.end(), rest.begin(), rest.end());
      return Sequent(std::move(ante), succ);
    }
  };

  State make_state(const Sequent& goal) const {
    State st{{}, {}, goal.succedent};
    for (const auto& f : goal.antecedent) push(st, f);
    return st;
  }

  struct Res {
    bool ok = false;
    int cost = 0;
    DerivationPtr proof;  // concludes the canonical arrangement
    bool pruned = false;  // failure was (possibly) budget-limited
  };

  // Minimal-cost proof of `st` among proofs with cost <= cap, where cost
  // counts logical, Buszkowski and contraction nodes.
  Res solve(const State& st, int cap) {
    if (depth_ > kMaxDepth) return {false, 0, nullptr, true};
    DepthGuard guard(depth_);
    // Every visit counts against the node budget, memo hits included: the
    // per-visit work (canonicalizing and hashing the state) is real, and
    // charging it keeps the total runtime proportional to the budget even
    // when deep contraction chains make the states themselves large.
    if (--nodes_left_ < 0) throw NodesExhausted{};
    Sequent key = st.canonical();
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      Entry& e = it->second;
      if (e.min_cost >= 0 && e.min_cost <= cap)
        return {true, e.min_cost, e.proof, false};
      if (e.min_cost >= 0)  // proof exists but is over this cap
        return {false, 0, nullptr, true};
      if (cap <= e.fail_cap) return {false, 0, nullptr, e.fail_pruned};
    }
    Res best = explore(st, cap);

    Entry& e = memo_[key];
    if (best.ok) {
      e.min_cost = best.cost;
      e.proof = best.proof;
    } else if (cap > e.fail_cap) {
      e.fail_cap = cap;
      e.fail_pruned = best.pruned;
    }
    return best;
  }

 private:
  static constexpr int kMaxDepth = 1500;
  struct DepthGuard {
    int& d;
    explicit DepthGuard(int& depth) : d(depth) { ++d; }
    ~DepthGuard() { --d; }
  };

  struct Entry {
    int min_cost = -1;  // exact minimum when >= 0
    DerivationPtr proof;
    int fail_cap = -1;  // no proof with cost <= fail_cap
    bool fail_pruned = false;
  };

  void push(State& st, const Formula& f) const {
    if (floats_ && f.is_bang()) {
      auto pos = std::lower_bound(st.bangs.begin(), st.bangs.end(), f);
      st.bangs.insert(pos, f);
    } else {
      st.rest.push_back(f);
    }
  }

  static State without_bang(const State& st, std::size_t i) {
    State out = st;
    out.bangs.erase(out.bangs.begin() + i);
    return out;
  }

  // Child proof concluding canonical(child); permute it into `target`.
  DerivationPtr fit(const Res& r, const std::vector<Formula>& target) const {
    return rearrange(r.proof, target);
  }

  Res explore(const State& st, int cap) {
    Res best;
    bool pruned = false;

    // Axiom: zero cost, always preferred.
    if (st.bangs.empty() && st.rest.size() == 1 && st.rest[0] == st.succ)
      return {true, 0, Derivation::axiom(st.succ), false};
    if (st.rest.empty() && st.bangs.size() == 1 && st.bangs[0] == st.succ)
      return {true, 0, Derivation::axiom(st.succ), false};

    auto consider = [&](int cost, DerivationPtr proof) {
      if (!best.ok || cost < best.cost) best = {true, cost, std::move(proof)};
    };
    // Remaining room for the transition currently being explored.
    auto room = [&]() { return best.ok ? best.cost - 1 : cap; };

    // Every non-axiom transition costs at least 1.
    if (cap < 1) return {false, 0, nullptr, true};

    const std::vector<Formula>& bg = st.bangs;
    const std::vector<Formula>& rest = st.rest;
    const int nb = static_cast<int>(bg.size());
    const int nr = static_cast<int>(rest.size());

    // (->/)
    if (st.succ.is_over()) {
      Formula a = st.succ.denominator(), b = st.succ.numerator();
      State child{bg, rest, b};
      push(child, a);
      if (int rc = room(); rc >= 1) {
        Res r = solve(child, rc - 1);
        pruned |= r.pruned;
        if (r.ok) {
          std::vector<Formula> want = bg;
          want.insert(want.end(), rest.begin(), rest.end());
          want.push_back(a);
          DerivationPtr p = fit(r, want);
          want.pop_back();
          consider(1 + r.cost,
                   Derivation::make(RuleTag::over_right(),
                                    Sequent(std::move(want), st.succ), {p}));
        }
      } else {
        pruned = true;
      }
    }

    // (->\)
    if (st.succ.is_under()) {
      Formula a = st.succ.denominator(), b = st.succ.numerator();
      State child{bg, {}, b};
      child.rest.reserve(nr + 1);
      if (floats_ && a.is_bang()) {
        child.rest = rest;
        push(child, a);
      } else {
        child.rest.push_back(a);
        child.rest.insert(child.rest.end(), rest.begin(), rest.end());
      }
      if (int rc = room(); rc >= 1) {
        Res r = solve(child, rc - 1);
        pruned |= r.pruned;
        if (r.ok) {
          std::vector<Formula> want{a};
          want.insert(want.end(), bg.begin(), bg.end());
          want.insert(want.end(), rest.begin(), rest.end());
          DerivationPtr p = fit(r, want);
          std::vector<Formula> concl = bg;
          concl.insert(concl.end(), rest.begin(), rest.end());
          consider(1 + r.cost,
                   Derivation::make(RuleTag::under_right(),
                                    Sequent(std::move(concl), st.succ), {p}));
        }
      } else {
        pruned = true;
      }
    }

    if (floats_) {
      // (->!): every antecedent formula must be banged.
      if (st.succ.is_bang() && rest.empty()) {
        State child{bg, {}, st.succ.body()};
        if (int rc = room(); rc >= 1) {
          Res r = solve(child, rc - 1);
          pruned |= r.pruned;
          if (r.ok)
            consider(1 + r.cost,
                     Derivation::make(RuleTag::bang_right(),
                                      Sequent(bg, st.succ), {r.proof}));
        } else {
          pruned = true;
        }
      }

      // (!->), fused with the use of the released body. A derelicted body is
      // never left idle in the ordered part: a banged body joins the
      // multiset, a division body becomes the principal formula of a left
      // rule (below), and an atomic body is only ever released against an
      // axiom. With keep = true the banged formula is retained for further
      // use; the extra copy is merged back by a contraction node.
      for (int i = 0; i < nb; ++i) {
        if (i > 0 && bg[i] == bg[i - 1]) continue;  // dedupe multiset
        Formula body = bg[i].body();
        if (body.is_bang()) {
          for (int keep = 0; keep < 2; ++keep) {
            if (int rc = room(); rc >= 1 + keep) {
              State child = keep ? st : without_bang(st, i);
              push(child, body);
              auto pos =
                  std::find(child.bangs.begin(), child.bangs.end(), body);
              int body_index = static_cast<int>(pos - child.bangs.begin());
              Res r = solve(child, rc - 1 - keep);
              pruned |= r.pruned;
              if (r.ok) {
                std::vector<Formula> concl = child.canonical().antecedent;
                concl[body_index] = bg[i];
                DerivationPtr node = Derivation::make(
                    RuleTag::bang_left(body_index),
                    Sequent(std::move(concl), st.succ), {r.proof});
                consider(1 + keep + r.cost,
                         restructure_bangs(node, st.canonical()));
              }
            } else {
              pruned = true;
            }
          }
        } else if (nb == 1 && rest.empty() && body == st.succ) {
          consider(1, Derivation::make(RuleTag::bang_left(0),
                                       Sequent({bg[0]}, st.succ),
                                       {Derivation::axiom(body)}));
        }
      }
    }

    // Left division rules: the principal formula is taken from the ordered
    // part, or is the body of a floating banged formula ((!->) fused in).
    auto left_rules_for = [&](const Formula& f, int bang_src) {
      for (int keep = 0; keep <= (bang_src >= 0 ? 1 : 0); ++keep) {
        std::vector<Formula> splitme =
            bang_src >= 0 && !keep ? without_bang(st, bang_src).bangs : bg;
        std::vector<Formula> rem = rest;
        int lo = 0, hi = nr;
        if (bang_src < 0) {
          int at = static_cast<int>(&f - rest.data());
          rem.erase(rem.begin() + at);
          lo = hi = at;  // fixed position for an in-place principal
        }
        for (int pos = lo; pos <= hi; ++pos) {
          const int nrem = static_cast<int>(rem.size());
          if (f.is_over())
            for (int k = 0; pos + k <= nrem; ++k)
              left_rule(st, f, bang_src >= 0, splitme, rem, pos, k,
                        /*over=*/true, pruned, room, consider);
          if (f.is_under())
            for (int k = 0; k <= pos; ++k)
              left_rule(st, f, bang_src >= 0, splitme, rem, pos, k,
                        /*over=*/false, pruned, room, consider);
        }
      }
    };
    for (int i = 0; i < nr; ++i)
      if (rest[i].is_over() || rest[i].is_under()) left_rules_for(rest[i], -1);
    for (int i = 0; i < nb; ++i) {
      if (i > 0 && bg[i] == bg[i - 1]) continue;
      Formula body = bg[i].body();
      if (body.is_over() || body.is_under()) left_rules_for(body, i);
    }

    // Buszkowski rules.
    if (st.succ.is_var()) {
      for (int idx = 0; idx < static_cast<int>(sys_.rules.size()); ++idx) {
        const BRule& br = sys_.rules[idx];
        if (br.r != st.succ.atom()) continue;
        if (br.form == BRule::B1) {
          for (int split = 0; split <= nr; ++split)
            for_each_bang_split(bg, [&](const std::vector<Formula>& s1,
                                        const std::vector<Formula>& s2,
                                        int overlap) {
              b1_rule(st, idx, split, s1, s2, overlap, pruned, room, consider);
            });
        } else {
          if (int rc = room(); rc >= 1) {
            State child = st;
            child.rest.push_back(Formula::var(br.q));
            child.succ = Formula::var(br.p);
            Res r = solve(child, rc - 1);
            pruned |= r.pruned;
            if (r.ok) {
              std::vector<Formula> concl = bg;
              concl.insert(concl.end(), rest.begin(), rest.end());
              consider(1 + r.cost,
                       Derivation::make(RuleTag::b2(idx),
                                        Sequent(std::move(concl), st.succ),
                                        {r.proof}));
            }
          } else {
            pruned = true;
          }
        }
      }
    }

    if (best.ok) return best;
    return {false, 0, nullptr, pruned};
  }

  // One left-rule application: principal `f` sits at index `pos` of the
  // ordered part `rem` (which excludes it); `fused` marks a principal
  // released from a banged formula by an implicit (!->) just above the
  // conclusion. The multiset `splitme` is distributed over the premises;
  // every surplus copy re-emits one contraction node.
  template <typename Room, typename Consider>
  void left_rule(const State& st, const Formula& f, bool fused,
                 const std::vector<Formula>& splitme,
                 const std::vector<Formula>& rem, int pos, int k, bool over,
                 bool& pruned, Room room, Consider consider) {
    const int nb = static_cast<int>(st.bangs.size());
    for_each_bang_split(splitme, [&](const std::vector<Formula>& s1,
                                     const std::vector<Formula>& s2,
                                     int group_overlap) {
      (void)group_overlap;
      const int contr = static_cast<int>(s1.size() + s2.size()) +
                        (fused ? 1 : 0) - nb;
      const int base = 1 + (fused ? 1 : 0) + contr;
      int rc = room();
      if (rc < base) {
        pruned = true;
        return;
      }
      // Premise 1: Gamma -> denominator, Gamma = chosen bangs + slice.
      // Premise 2 carries the released numerator; a banged numerator keeps
      // floating and is permuted into the literal rule shape afterwards.
      const Formula num = f.numerator();
      State c1{s1, {}, f.denominator()};
      State c2{s2, {}, st.succ};
      std::vector<Formula> p2want = s2;
      int b_index;  // index of the numerator in the premise-2 arrangement
      if (over) {
        c1.rest.assign(rem.begin() + pos, rem.begin() + pos + k);
        c2.rest.assign(rem.begin(), rem.begin() + pos);
        push(c2, num);
        c2.rest.insert(c2.rest.end(), rem.begin() + pos + k, rem.end());
        p2want.insert(p2want.end(), rem.begin(), rem.begin() + pos);
        p2want.push_back(num);
        p2want.insert(p2want.end(), rem.begin() + pos + k, rem.end());
        b_index = static_cast<int>(s2.size()) + pos;
      } else {
        c1.rest.assign(rem.begin() + pos - k, rem.begin() + pos);
        c2.rest.assign(rem.begin(), rem.begin() + pos - k);
        push(c2, num);
        c2.rest.insert(c2.rest.end(), rem.begin() + pos, rem.end());
        p2want.insert(p2want.end(), rem.begin(), rem.begin() + pos - k);
        p2want.push_back(num);
        p2want.insert(p2want.end(), rem.begin() + pos, rem.end());
        b_index = static_cast<int>(s2.size()) + pos - k;
      }
      Res r1 = solve(c1, rc - base);
      pruned |= r1.pruned;
      if (!r1.ok) return;
      Res r2 = solve(c2, rc - base - r1.cost);
      pruned |= r2.pruned;
      if (!r2.ok) return;

      const Sequent p1 = c1.canonical();
      DerivationPtr pr2 = rearrange(r2.proof, p2want);
      std::vector<Formula> concl(p2want.begin(), p2want.begin() + b_index);
      RuleTag tag;
      int f_index;  // index of the principal in the built conclusion
      if (over) {
        f_index = b_index;
        concl.push_back(f);
        concl.insert(concl.end(), p1.antecedent.begin(), p1.antecedent.end());
        tag = RuleTag::over_left(b_index,
                                 static_cast<int>(p1.antecedent.size()));
      } else {
        concl.insert(concl.end(), p1.antecedent.begin(), p1.antecedent.end());
        concl.push_back(f);
        f_index = b_index + static_cast<int>(p1.antecedent.size());
        tag = RuleTag::under_left(f_index,
                                  static_cast<int>(p1.antecedent.size()));
      }
      concl.insert(concl.end(), p2want.begin() + b_index + 1, p2want.end());
      DerivationPtr node =
          Derivation::make(tag, Sequent(concl, st.succ), {r1.proof, pr2});
      if (fused) {
        concl[f_index] = Formula::bang(f);
        node = Derivation::make(RuleTag::bang_left(f_index),
                                Sequent(std::move(concl), st.succ), {node});
      }
      consider(base + r1.cost + r2.cost,
               restructure_bangs(node, st.canonical()));
    });
  }

  template <typename Room, typename Consider>
  void b1_rule(const State& st, int idx, int split,
               const std::vector<Formula>& s1, const std::vector<Formula>& s2,
               int overlap, bool& pruned, Room room, Consider consider) {
    int rc = room();
    if (rc < 1 + overlap) {
      pruned = true;
      return;
    }
    const BRule& br = sys_.rules[idx];
    State c1{s1,
             {st.rest.begin(), st.rest.begin() + split},
             Formula::var(br.p)};
    State c2{s2, {st.rest.begin() + split, st.rest.end()}, Formula::var(br.q)};
    Res r1 = solve(c1, rc - 1 - overlap);
    pruned |= r1.pruned;
    if (!r1.ok) return;
    Res r2 = solve(c2, rc - 1 - overlap - r1.cost);
    pruned |= r2.pruned;
    if (!r2.ok) return;
    const Sequent p1 = c1.canonical();
    const Sequent p2 = c2.canonical();
    std::vector<Formula> concl = p1.antecedent;
    concl.insert(concl.end(), p2.antecedent.begin(), p2.antecedent.end());
    DerivationPtr node = Derivation::make(
        RuleTag::b1(idx, static_cast<int>(p1.antecedent.size())),
        Sequent(std::move(concl), st.succ), {r1.proof, r2.proof});
    consider(1 + overlap + r1.cost + r2.cost,
             restructure_bangs(node, st.canonical()));
  }

  // Enumerates the ways to send the sorted banged multiset to two premises.
  // Per formula with count c, the premises receive (s, t) copies with
  // s, t <= c and s + t >= c; the s + t - c shared copies each stand for one
  // contraction node below the branching rule.
  template <typename Fn>
  static void for_each_bang_split(const std::vector<Formula>& bangs, Fn fn) {
    std::vector<std::pair<Formula, int>> groups;
    for (const auto& f : bangs) {
      if (!groups.empty() && groups.back().first == f)
        ++groups.back().second;
      else
        groups.emplace_back(f, 1);
    }
    std::vector<std::vector<std::pair<int, int>>> opts(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const int c = groups[g].second;
      for (int overlap = 0; overlap <= c; ++overlap)
        for (int s = overlap; s <= c; ++s)
          opts[g].emplace_back(s, c - s + overlap);
    }
    std::vector<std::size_t> pick(groups.size(), 0);
    for (;;) {
      std::vector<Formula> s1, s2;
      int overlap = 0;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        auto [s, t] = opts[g][pick[g]];
        for (int c = 0; c < s; ++c) s1.push_back(groups[g].first);
        for (int c = 0; c < t; ++c) s2.push_back(groups[g].first);
        overlap += s + t - groups[g].second;
      }
      fn(s1, s2, overlap);
      std::size_t g = 0;
      while (g < groups.size() && pick[g] + 1 == opts[g].size()) pick[g++] = 0;
      if (g == groups.size()) break;
      ++pick[g];
    }
  }

  System sys_;
  bool floats_;
  long nodes_left_;
  int depth_ = 0;
  std::unordered_map<Sequent, Entry, SequentHash> memo_;
};

}  // namespace detail

// Sound and budget-complete backward search. Derivable results carry a
// checker-valid cut-free derivation (permutation blocks already minimized).
// The budget is a tree total: a derivation using at most
// max_logical_steps logical/Buszkowski nodes and max_contractions
// contraction nodes is within reach.
inline ProveResult prove(const Sequent& goal, const System& sys,
                         const Budget& budget) {
  detail::Searcher searcher(sys, budget.max_nodes);
  long cap_l = budget.max_logical_steps, cap_c = budget.max_contractions;
  const int cap = static_cast<int>(
      std::min<long>(cap_l + cap_c, std::numeric_limits<int>::max() / 2));
  try {
    auto st = searcher.make_state(goal);
    // Iterative deepening on the cost cap keeps the recursion shallow; the
    // memo carries over between rounds.
    for (int c = std::min(cap, 16);; c = c >= cap / 2 ? cap : 2 * c) {
      auto res = searcher.solve(st, c);
      if (res.ok) {
        auto proof = rearrange(res.proof, goal.antecedent);
        return {Verdict::Derivable, normalize_perm_blocks(proof), ""};
      }
      if (!res.pruned) return {Verdict::NotDerivable, nullptr, ""};
      if (c >= cap)
        return {Verdict::Unknown, nullptr, "step budget exhausted"};
    }
  } catch (const detail::NodesExhausted&) {
    return {Verdict::Unknown, nullptr, "search node budget exhausted"};
  }
}

// Budget justified by the quadratic-size derivation bound for the fragment
// where ! is applied only to variables: a derivable sequent of size n has a
// derivation with fewer than n logical and 2n contraction nodes, so
// exhausting that budget is definitive. Never returns Unknown.
inline ProveResult decide_restricted(const Sequent& goal) {
  if (!classify(goal).bang_on_vars_only)
    throw FragmentViolation(
        "decide_restricted: ! applied to a non-variable in " +
        format_sequent(goal));
  const int n = goal.size();
  Budget budget{n - 1, 2 * n - 1, 0};
  ProveResult r = prove(goal, System::bang_lstar(), budget);
  if (r.verdict == Verdict::Unknown)  // budget prune cannot hide a proof here
    return {Verdict::NotDerivable, nullptr, ""};
  return r;
}

}  // namespace lambek
