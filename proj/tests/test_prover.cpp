#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lambek/oracle.hpp"
#include "lambek/prover.hpp"
#include "testutil.hpp"

using namespace lambek;

namespace {
const System kBang = System::bang_lstar();
const System kPlain = System::lstar();

Verdict decide(const char* s) { return decide_restricted(parse_sequent(s)).verdict; }
}  // namespace

TEST_CASE("basic derivability in L*") {
  CHECK(decide("p -> p") == Verdict::Derivable);
  CHECK(decide("p, p\\q -> q") == Verdict::Derivable);
  CHECK(decide("q/p, p -> q") == Verdict::Derivable);
  CHECK(decide("-> p/p") == Verdict::Derivable);
  CHECK(decide("p -> q") == Verdict::NotDerivable);
  CHECK(decide("q, p -> p") == Verdict::NotDerivable);
  CHECK(decide("p, q/p -> q") == Verdict::NotDerivable);  // order matters
  CHECK(decide("p/q -> p/q") == Verdict::Derivable);
  CHECK(decide("p/q, q/r -> p/r") == Verdict::Derivable);
}

TEST_CASE("modality: dereliction, permutation, contraction, no weakening") {
  CHECK(decide("!p -> p") == Verdict::Derivable);
  CHECK(decide("p -> !p") == Verdict::NotDerivable);
  CHECK(decide("(q/p)/p, !p -> q") == Verdict::Derivable);  // needs contraction
  CHECK(decide("!p, q -> q") == Verdict::NotDerivable);     // no weakening
  CHECK(decide("!p, !p -> p") == Verdict::NotDerivable);    // no co-contraction
  CHECK(decide("!p, !q -> !q") == Verdict::NotDerivable);
  CHECK(decide("q/p, !p -> q") == Verdict::Derivable);
  CHECK(decide("!p, q/p -> q") == Verdict::Derivable);  // via permutation
  CHECK(decide("s/!p, !p -> s") == Verdict::Derivable);
  CHECK(decide("!p\\s -> s/!p") == Verdict::Derivable);
  CHECK(decide("s/!p -> !p\\s") == Verdict::Derivable);
  CHECK(decide("!p -> !p") == Verdict::Derivable);
}

TEST_CASE("emitted derivations are checker-valid and conclude the goal") {
  const char* goals[] = {"(q/p)/p, !p -> q", "!p, q/p -> q", "s/!p, !p -> s",
                         "p/q, q/r -> p/r", "((q/p)/p)/p, !p -> q"};
  for (const char* g : goals) {
    Sequent s = parse_sequent(g);
    auto r = decide_restricted(s);
    REQUIRE(r.derivable());
    CHECK(checks(r.derivation, kBang));
    CHECK(r.derivation->conclusion() == s);
  }
}

TEST_CASE("decide_restricted rejects sequents outside its fragment") {
  CHECK_THROWS_AS(decide_restricted(parse_sequent("!(p/q) -> p/q")),
                  FragmentViolation);
}

TEST_CASE("prove handles nested bangs beyond the restricted fragment") {
  auto r = prove(parse_sequent("!(p/q), q -> p"), kBang, Budget::generous());
  REQUIRE(r.derivable());
  CHECK(checks(r.derivation, kBang));
  auto r2 = prove(parse_sequent("!!p -> p"), kBang, Budget::generous());
  REQUIRE(r2.derivable());
  CHECK(checks(r2.derivation, kBang));
}

TEST_CASE("bang rules are not available in plain L*") {
  auto r = prove(parse_sequent("!p -> p"), kPlain, Budget::generous());
  CHECK(r.verdict == Verdict::NotDerivable);
}

TEST_CASE("buszkowski rules extend L*") {
  RuleSet rs;
  rs.add_b1(Atom::intern("p"), Atom::intern("q"), Atom::intern("r"));
  rs.add_b2(Atom::intern("p"), Atom::intern("q"), Atom::intern("r"));
  System sys = System::lstar_plus(rs);
  auto r1 = prove(parse_sequent("p, q -> r"), sys, Budget::generous());
  REQUIRE(r1.derivable());
  CHECK(checks(r1.derivation, sys));
  auto r2 = prove(parse_sequent("p/q -> r"), sys, Budget::generous());
  REQUIRE(r2.derivable());
  CHECK(checks(r2.derivation, sys));
  // rule premises compose with logical rules
  auto r3 = prove(parse_sequent("p/s, s, q -> r"), sys, Budget::generous());
  REQUIRE(r3.derivable());
  CHECK(checks(r3.derivation, sys));
  CHECK(prove(parse_sequent("q, p -> r"), sys, Budget::generous()).verdict ==
        Verdict::NotDerivable);
}

TEST_CASE("rule order does not change verdicts") {
  RuleSet a, b;
  a.add_b1(Atom::intern("p"), Atom::intern("q"), Atom::intern("r"));
  a.add_b2(Atom::intern("r"), Atom::intern("q"), Atom::intern("s"));
  b.add_b2(Atom::intern("r"), Atom::intern("q"), Atom::intern("s"));
  b.add_b1(Atom::intern("p"), Atom::intern("q"), Atom::intern("r"));
  const char* goals[] = {"p, q -> r", "(p/q) -> s", "p -> s", "p, q -> s"};
  for (const char* g : goals) {
    auto ra = prove(parse_sequent(g), System::lstar_plus(a), Budget::generous());
    auto rb = prove(parse_sequent(g), System::lstar_plus(b), Budget::generous());
    CHECK(ra.verdict == rb.verdict);
  }
}

TEST_CASE("node budget exhaustion reports Unknown, never a wrong verdict") {
  Budget tiny = Budget::generous(5);
  auto r = prove(parse_sequent("(q/p)/p, !p, (q\\s)/q, !(q\\s) -> s"), kBang,
                 tiny);
  CHECK(r.verdict != Verdict::NotDerivable);
  if (r.verdict == Verdict::Unknown) CHECK_FALSE(r.reason.empty());
}

TEST_CASE("budget monotonicity: verdicts never flip as budgets grow") {
  std::mt19937 rng(4711);
  for (int i = 0; i < 120; ++i) {
    Sequent s = testutil::random_sequent(rng, 7, true, true);
    Verdict prev = Verdict::Unknown;
    for (long nodes : {8L, 64L, 4096L, 1000000L}) {
      auto r = prove(s, kBang, Budget::generous(nodes));
      if (prev != Verdict::Unknown) CHECK(r.verdict == prev);
      if (r.verdict != Verdict::Unknown) prev = r.verdict;
    }
    CHECK(prev == decide_restricted(s).verdict);
  }
}

TEST_CASE("exhaustive oracle agreement at size 5") {
  std::mt19937 rng(1);
  long checked = 0;
  for (int i = 0; i < 400; ++i) {
    Sequent s = testutil::random_sequent(rng, 5, true, true);
    bool oracle = brute_force_derivable(s, kBang, 12 * s.size() * s.size() + 3 * s.size());
    auto r = decide_restricted(s);
    REQUIRE(r.verdict != Verdict::Unknown);
    CHECK(r.derivable() == oracle);
    if (r.derivable()) CHECK(checks(r.derivation, kBang));
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("the quadratic budget suffices inside the restricted fragment") {
  // decide_restricted gives definitive verdicts with the fragment budget
  const char* goals[] = {"(q/p)/p, !p -> q", "!p, !q, q\\(p\\s) -> s",
                         "((q/p)/p)/p, !p -> q", "!p, p\\(p\\q) -> q"};
  for (const char* g : goals) {
    auto r = decide_restricted(parse_sequent(g));
    CHECK(r.verdict == Verdict::Derivable);
    Sequent s = parse_sequent(g);
    int bound = 12 * s.size() * s.size() + 3 * s.size();
    CHECK(normalize_perm_blocks(r.derivation)->node_count() < bound);
  }
}
