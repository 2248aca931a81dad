#pragma once

// Independent derivability oracle: forward saturation from axioms over the
// subformula universe of the goal, ordered by derivation node count. The
// search shares no code with the backward prover and is used to cross-check
// it; it can also rebuild a concrete derivation from the saturated cost map,
// which makes it the engine of choice for rule systems whose backward search
// space explodes (long B2 chains) even though small derivations exist.
//
// Every sequent in a cut-free derivation of the goal is built from
// subformulas of the goal plus the atoms of the extra rules, and for each
// such formula f the number of occurrences of f in a premise exceeds the
// number in the conclusion only at contractions (formulas under !) and at
// Buszkowski rules (their atoms), each of which contributes at most a fixed
// excess per node. With at most `bound` nodes this caps the occurrence
// counts of every reachable sequent, which keeps the saturation finite and
// the pruning sound.

#include <map>
#include <queue>
#include <unordered_map>

#include "lambek/derivation.hpp"
#include "lambek/expansion.hpp"
#include "lambek/rules.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

class OracleOverflow : public std::runtime_error {
 public:
  explicit OracleOverflow(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

class Oracle {
 public:
  Oracle(const Sequent& goal, const System& sys, int bound, long state_cap)
      : goal_(goal), sys_(sys), bound_(bound), state_cap_(state_cap) {
    sys_.validate();
    structural_ = sys_.structural_allowed();
    collect_universe();
  }

  bool run() {
    for (const auto& f : universe_) enqueue(Sequent({f}, f), 1);
    while (!queue_.empty()) {
      auto [cost, seq] = queue_.top();
      queue_.pop();
      auto it = best_.find(seq);
      if (it == best_.end() || it->second < cost) continue;  // stale entry
      if (seq == goal_) return true;
      if (static_cast<long>(settled_.size()) >= state_cap_)
        throw OracleOverflow("oracle state cap exceeded");
      settled_.emplace_back(seq, cost);
      index_settled(static_cast<int>(settled_.size()) - 1);
      expand(seq, cost);
    }
    return false;
  }

  // After a successful run(): rebuild a derivation of `goal` from the cost
  // map. Every entry of best_ was enqueued by a rule application whose
  // premises were already in best_ with strictly smaller costs, so scanning
  // the inverse rule instances for premises whose recorded costs fit under
  // the entry's own cost always makes progress and terminates.
  DerivationPtr rebuild(const Sequent& s) const {
    const Cost c = best_.at(s);
    for (const auto& e : backward_expansions(s, sys_, /*contr_allowed=*/true)) {
      Cost sum = 1;
      bool ok = true;
      for (const auto& p : e.premises) {
        auto it = best_.find(p);
        if (it == best_.end()) {
          ok = false;
          break;
        }
        sum += it->second;
      }
      if (!ok || sum > c) continue;
      std::vector<DerivationPtr> prem;
      prem.reserve(e.premises.size());
      for (const auto& p : e.premises) prem.push_back(rebuild(p));
      return Derivation::make(e.rule, s, std::move(prem));
    }
    throw std::logic_error("oracle: no reconstruction for a settled sequent");
  }

 private:
  using Cost = int;

  void collect_universe() {
    auto subs = subformulas(goal_);
    for (const auto& r : sys_.rules) {
      subs.insert(Formula::var(r.p));
      subs.insert(Formula::var(r.q));
      subs.insert(Formula::var(r.r));
    }
    universe_.assign(subs.begin(), subs.end());
    std::sort(universe_.begin(), universe_.end());
    for (std::size_t i = 0; i < universe_.size(); ++i)
      index_[universe_[i]] = static_cast<int>(i);

    // occ_[g] = per-universe-formula subformula occurrence counts inside g.
    for (const auto& g : universe_) occ_[g] = occurrences(g);

    std::vector<long> goal_occ(universe_.size(), 0);
    accumulate(goal_occ, goal_.succedent);
    for (const auto& f : goal_.antecedent) accumulate(goal_occ, f);

    // Excess multiplier: how many occurrences of universe_[i] one contraction
    // (a duplicated banged formula) can add.
    std::vector<long> mult(universe_.size(), 0);
    for (const auto& g : universe_) {
      if (!g.is_bang()) continue;
      const auto& o = occ_[g];
      for (std::size_t i = 0; i < o.size(); ++i)
        mult[i] = std::max(mult[i], o[i]);
    }
    std::vector<bool> rule_atom(universe_.size(), false);
    for (const auto& r : sys_.rules)
      for (const Atom& a : {r.p, r.q, r.r})
        rule_atom[index_.at(Formula::var(a))] = true;

    cap_.resize(universe_.size());
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      long extra = 0;
      if (mult[i] > 0) extra = std::max(extra, mult[i] * bound_);
      if (rule_atom[i]) extra = std::max(extra, static_cast<long>(bound_));
      cap_[i] = goal_occ[i] + extra;
    }
    len_cap_ = static_cast<int>(goal_.antecedent.size()) + bound_;

    // Interaction indexes: the division formulas a settled premise can be
    // plugged into, keyed both ways, and the B1 rules keyed by each premise
    // succedent. These let expand() touch only premise pairs that can
    // actually combine instead of scanning all settled pairs.
    for (const auto& f : universe_) {
      if (f.is_var() || f.is_bang()) continue;
      div_by_num_[f.numerator()].push_back(f);
      div_by_denom_[f.denominator()].push_back(f);
    }
    for (const auto& r : sys_.rules) {
      if (r.form != BRule::B1) continue;
      b1_by_p_[Formula::var(r.p)].push_back(&r);
      b1_by_q_[Formula::var(r.q)].push_back(&r);
    }
  }

  std::vector<long> occurrences(const Formula& f) {
    std::vector<long> v(universe_.size(), 0);
    accumulate(v, f);
    return v;
  }

  void accumulate(std::vector<long>& v, const Formula& f) {
    auto it = index_.find(f);
    if (it != index_.end()) ++v[it->second];
    if (f.is_bang()) {
      accumulate(v, f.body());
    } else if (!f.is_var()) {
      accumulate(v, f.numerator());
      accumulate(v, f.denominator());
    }
  }

  bool within_caps(const Sequent& s) const {
    if (static_cast<int>(s.antecedent.size()) > len_cap_) return false;
    std::vector<long> v(universe_.size(), 0);
    for (const auto& f : s.antecedent) {
      auto it = occ_.find(f);
      if (it == occ_.end()) return false;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += it->second[i];
    }
    auto it = occ_.find(s.succedent);
    if (it == occ_.end()) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] += it->second[i];
      if (v[i] > cap_[i]) return false;
    }
    return true;
  }

  void enqueue(const Sequent& s, Cost cost) {
    if (cost > bound_) return;
    if (!within_caps(s)) return;
    auto it = best_.find(s);
    if (it != best_.end() && it->second <= cost) return;
    best_[s] = cost;
    queue_.push({cost, s});
  }

  bool in_universe(const Formula& f) const { return index_.count(f) != 0; }

  void index_settled(int idx) {
    const auto& [s, cost] = settled_[idx];
    succ_bucket_[s.succedent].push_back(idx);
    std::vector<Formula> seen;
    for (const auto& f : s.antecedent) {
      if (std::find(seen.begin(), seen.end(), f) != seen.end()) continue;
      seen.push_back(f);
      ante_bucket_[f].push_back(idx);
    }
  }

  void expand(const Sequent& s, Cost cost) {
    unary(s, cost);

    // s as the right premise of (/->)/(\->): each antecedent member that is
    // the numerator of a universe division pairs with every settled left
    // premise whose succedent is that division's denominator.
    for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
      auto dit = div_by_num_.find(s.antecedent[i]);
      if (dit == div_by_num_.end()) continue;
      for (const Formula& f : dit->second) {
        auto bit = succ_bucket_.find(f.denominator());
        if (bit == succ_bucket_.end()) continue;
        for (int j : bit->second) {
          const auto& [lhs, lc] = settled_[j];
          apply_div(lhs, lc, s, cost, i, f);
        }
      }
    }
    // s as the left premise: divisions whose denominator is its succedent,
    // against settled right premises containing the division's numerator.
    auto dit = div_by_denom_.find(s.succedent);
    if (dit != div_by_denom_.end()) {
      for (const Formula& f : dit->second) {
        auto bit = ante_bucket_.find(f.numerator());
        if (bit == ante_bucket_.end()) continue;
        for (int j : bit->second) {
          const auto& [rhs, rc] = settled_[j];
          for (std::size_t i = 0; i < rhs.antecedent.size(); ++i)
            if (rhs.antecedent[i] == f.numerator())
              apply_div(s, cost, rhs, rc, i, f);
        }
      }
    }

    // (B1): settled premises keyed by succedent.
    if (s.succedent.is_var()) {
      auto lit = b1_by_p_.find(s.succedent);
      if (lit != b1_by_p_.end())
        for (const BRule* r : lit->second) {
          auto bit = succ_bucket_.find(Formula::var(r->q));
          if (bit == succ_bucket_.end()) continue;
          for (int j : bit->second) {
            const auto& [rhs, rc] = settled_[j];
            apply_b1(s, cost, rhs, rc, *r);
          }
        }
      auto rit = b1_by_q_.find(s.succedent);
      if (rit != b1_by_q_.end())
        for (const BRule* r : rit->second) {
          auto bit = succ_bucket_.find(Formula::var(r->p));
          if (bit == succ_bucket_.end()) continue;
          for (int j : bit->second) {
            const auto& [lhs, lc] = settled_[j];
            apply_b1(lhs, lc, s, cost, *r);
          }
        }
    }
  }

  // lhs = Gamma -> A against rhs = Delta1, B, Delta2 -> C at position i,
  // where f is the universe division built from B and A.
  void apply_div(const Sequent& lhs, Cost lc, const Sequent& rhs, Cost rc,
                 std::size_t i, const Formula& f) {
    const auto& delta = rhs.antecedent;
    std::vector<Formula> a(delta.begin(), delta.begin() + i);
    if (f.is_over()) {
      a.push_back(f);
      a.insert(a.end(), lhs.antecedent.begin(), lhs.antecedent.end());
    } else {
      a.insert(a.end(), lhs.antecedent.begin(), lhs.antecedent.end());
      a.push_back(f);
    }
    a.insert(a.end(), delta.begin() + i + 1, delta.end());
    enqueue(Sequent(std::move(a), rhs.succedent), lc + rc + 1);
  }

  void apply_b1(const Sequent& lhs, Cost lc, const Sequent& rhs, Cost rc,
                const BRule& r) {
    std::vector<Formula> a = lhs.antecedent;
    a.insert(a.end(), rhs.antecedent.begin(), rhs.antecedent.end());
    enqueue(Sequent(std::move(a), Formula::var(r.r)), lc + rc + 1);
  }

  // s as the only premise of a unary rule.
  void unary(const Sequent& s, Cost cost) {
    const auto& ante = s.antecedent;
    const int n = static_cast<int>(ante.size());

    // (->/) and (->\)
    if (n >= 1) {
      Formula f = Formula::over(s.succedent, ante.back());
      if (in_universe(f))
        enqueue(Sequent({ante.begin(), ante.end() - 1}, f), cost + 1);
      f = Formula::under(ante.front(), s.succedent);
      if (in_universe(f))
        enqueue(Sequent({ante.begin() + 1, ante.end()}, f), cost + 1);
    }

    if (structural_) {
      // (!->)
      for (int i = 0; i < n; ++i) {
        Formula banged = Formula::bang(ante[i]);
        if (!in_universe(banged)) continue;
        std::vector<Formula> a = ante;
        a[i] = banged;
        enqueue(Sequent(std::move(a), s.succedent), cost + 1);
      }
      // (->!)
      if (std::all_of(ante.begin(), ante.end(),
                      [](const Formula& f) { return f.is_bang(); })) {
        Formula banged = Formula::bang(s.succedent);
        if (in_universe(banged)) enqueue(Sequent(ante, banged), cost + 1);
      }
      // (perm1)/(perm2): single moves of a banged formula.
      for (int from = 0; from < n; ++from) {
        if (!ante[from].is_bang()) continue;
        for (int to = 0; to < n; ++to) {
          if (to == from) continue;
          std::vector<Formula> a = ante;
          Formula moved = a[from];
          a.erase(a.begin() + from);
          a.insert(a.begin() + to, moved);
          enqueue(Sequent(std::move(a), s.succedent), cost + 1);
        }
      }
      // (contr)
      for (int i = 0; i + 1 < n; ++i) {
        if (!ante[i].is_bang() || ante[i] != ante[i + 1]) continue;
        std::vector<Formula> a = ante;
        a.erase(a.begin() + i);
        enqueue(Sequent(std::move(a), s.succedent), cost + 1);
      }
    }

    // (B2)
    if (n >= 1 && ante.back().is_var() && s.succedent.is_var()) {
      for (const auto& r : sys_.rules) {
        if (r.form != BRule::B2 || ante.back().atom() != r.q ||
            s.succedent.atom() != r.p)
          continue;
        enqueue(Sequent({ante.begin(), ante.end() - 1}, Formula::var(r.r)),
                cost + 1);
      }
    }
  }

  Sequent goal_;
  System sys_;
  int bound_;
  long state_cap_;
  bool structural_ = false;

  std::vector<Formula> universe_;
  std::unordered_map<Formula, int, FormulaHash> index_;
  std::unordered_map<Formula, std::vector<long>, FormulaHash> occ_;
  std::vector<long> cap_;
  int len_cap_ = 0;

  struct Item {
    Cost cost;
    Sequent seq;
    bool operator>(const Item& o) const { return cost > o.cost; }
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue_;
  std::unordered_map<Sequent, Cost, SequentHash> best_;
  std::vector<std::pair<Sequent, Cost>> settled_;

  std::unordered_map<Formula, std::vector<Formula>, FormulaHash> div_by_num_;
  std::unordered_map<Formula, std::vector<Formula>, FormulaHash> div_by_denom_;
  std::unordered_map<Formula, std::vector<const BRule*>, FormulaHash> b1_by_p_;
  std::unordered_map<Formula, std::vector<const BRule*>, FormulaHash> b1_by_q_;
  std::unordered_map<Formula, std::vector<int>, FormulaHash> succ_bucket_;
  std::unordered_map<Formula, std::vector<int>, FormulaHash> ante_bucket_;
};

}  // namespace detail

// True iff `goal` has a cut-free derivation in `sys` with at most `bound`
// nodes (permutation nodes included). Throws OracleOverflow instead of
// answering when the saturation exceeds `state_cap` distinct sequents.
inline bool brute_force_derivable(const Sequent& goal, const System& sys,
                                  int bound, long state_cap = 2000000) {
  return detail::Oracle(goal, sys, bound, state_cap).run();
}

// Like brute_force_derivable, but also rebuilds the derivation it found.
// Returns nullptr when no derivation with at most `bound` nodes exists;
// throws OracleOverflow under the same conditions as brute_force_derivable.
inline DerivationPtr brute_force_derivation(const Sequent& goal,
                                            const System& sys, int bound,
                                            long state_cap = 2000000) {
  detail::Oracle oracle(goal, sys, bound, state_cap);
  if (!oracle.run()) return nullptr;
  return oracle.rebuild(goal);
}

}  // namespace lambek
