#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lambek/syntax.hpp"
#include "testutil.hpp"

using namespace lambek;

TEST_CASE("atom interning") {
  CHECK(Atom::intern("p") == Atom::intern("p"));
  CHECK(Atom::intern("p") != Atom::intern("q"));
  CHECK(Atom::intern("p") < Atom::intern("q"));
  CHECK_THROWS_AS(Atom::intern(""), std::invalid_argument);
  CHECK(Atom::intern("#gen0").generated());
  CHECK_FALSE(Atom::intern("p").generated());
}

TEST_CASE("fresh atoms cannot collide with parsed ones") {
  FreshAtoms fresh;
  Atom a = fresh.next("u");
  CHECK(a.generated());
  CHECK_THROWS_AS(parse_formula(a.name()), SyntaxError);
}

TEST_CASE("formula structure and size") {
  Formula p = Formula::var("p"), q = Formula::var("q");
  Formula over = Formula::over(p, q);  // p/q
  CHECK(over.is_over());
  CHECK(over.numerator() == p);
  CHECK(over.denominator() == q);
  CHECK(over.size() == 3);

  Formula under = Formula::under(p, q);  // p\q
  CHECK(under.is_under());
  CHECK(under.numerator() == q);
  CHECK(under.denominator() == p);

  Formula bang = Formula::bang(over);
  CHECK(bang.is_bang());
  CHECK(bang.body() == over);
  CHECK(bang.size() == 4);

  CHECK(over != under);
  CHECK(Formula::over(p, q) == Formula::over(p, q));
}

TEST_CASE("sequent size counts every formula") {
  Sequent s = parse_sequent("p/q, !p -> q");
  CHECK(s.size() == 3 + 2 + 1);
  CHECK(s == parse_sequent("p / q , !p -> q"));
  CHECK(s != parse_sequent("!p, p/q -> q"));
}

TEST_CASE("parsing conventions") {
  CHECK(parse_formula("p/q") == Formula::over(Formula::var("p"), Formula::var("q")));
  CHECK(parse_formula("p\\q") ==
        Formula::under(Formula::var("p"), Formula::var("q")));
  // ! binds tightest
  CHECK(parse_formula("!p/q") ==
        Formula::over(Formula::bang(Formula::var("p")), Formula::var("q")));
  CHECK(parse_formula("!(p/q)") ==
        Formula::bang(Formula::over(Formula::var("p"), Formula::var("q"))));
  // divisions are non-associative
  CHECK_THROWS_AS(parse_formula("p/q/r"), SyntaxError);
  CHECK_NOTHROW(parse_formula("(p/q)/r"));
  CHECK_NOTHROW(parse_formula("p/(q/r)"));
  // empty antecedent
  Sequent s = parse_sequent("-> p/p");
  CHECK(s.antecedent.empty());
  CHECK_THROWS_AS(parse_sequent("p ->"), SyntaxError);
  CHECK_THROWS_AS(parse_sequent("p q -> r"), SyntaxError);
}

TEST_CASE("format/parse round trip") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 500; ++i) {
    Formula f = testutil::random_formula(rng, 9, /*allow_bang=*/true);
    CHECK(parse_formula(format_formula(f)) == f);
  }
  for (int i = 0; i < 200; ++i) {
    Sequent s = testutil::random_sequent(rng, 12, /*allow_bang=*/true);
    CHECK(parse_sequent(format_sequent(s)) == s);
  }
}

TEST_CASE("fragment classification") {
  CHECK(classify(parse_sequent("p/q, p -> q")).bang_free);
  CHECK(classify(parse_sequent("p/q, p -> q")).bang_on_vars_only);
  FragmentFlags f = classify(parse_sequent("!p, q -> q"));
  CHECK_FALSE(f.bang_free);
  CHECK(f.bang_on_vars_only);
  CHECK_FALSE(classify(parse_formula("!(p/q)")).bang_on_vars_only);
  CHECK(classify(parse_formula("p/q")).one_division);
  CHECK_FALSE(classify(parse_formula("p\\q")).one_division);
}

TEST_CASE("subformula collection") {
  auto subs = subformulas(parse_sequent("p/q -> p/q"));
  CHECK(subs.size() == 3);  // p/q, p, q
  CHECK(subs.count(parse_formula("p")) == 1);
  CHECK(subs.count(parse_formula("q/p")) == 0);
}
