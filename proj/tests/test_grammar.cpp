#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lambek/grammar.hpp"

using namespace lambek;

namespace {
Atom at(std::string_view s) { return Atom::intern(s); }

// a^n b^n via s => a b | a t, t => s b
BinaryGrammar anbn() {
  BinaryGrammar g{{at("s"), at("t")}, {at("a"), at("b")}, at("s"), {}};
  g.add_expand(at("s"), at("a"), at("b"));
  g.add_expand(at("s"), at("a"), at("t"));
  g.add_expand(at("t"), at("s"), at("b"));
  return g;
}

SymbolString word(const char* s) {
  SymbolString out;
  std::istringstream is(s);
  for (std::string t; is >> t;) out.push_back(at(t));
  return out;
}
}  // namespace

TEST_CASE("rewrite steps expand and reduce") {
  BinaryGrammar g = anbn();
  SymbolString w = rewrite_step({at("s")}, g.productions[0], 0);
  CHECK(w == word("a b"));
  g.add_reduce(at("a"), at("b"), at("s"));
  CHECK(rewrite_step(w, g.productions[3], 0) == word("s"));
  CHECK_THROWS_AS(rewrite_step(w, g.productions[0], 0), std::invalid_argument);
  CHECK_THROWS_AS(rewrite_step(w, g.productions[3], 1), std::invalid_argument);
}

TEST_CASE("replay_trace follows a recorded trace") {
  BinaryGrammar g = anbn();
  RewriteTrace t{{1, 0}, {2, 1}, {0, 1}};
  CHECK(replay_trace(g, g.start, t) == word("a a b b"));
  CHECK_THROWS_AS(replay_trace(g, g.start, RewriteTrace{{9, 0}}),
                  std::invalid_argument);
}

TEST_CASE("derives finds words of the a^n b^n language") {
  BinaryGrammar g = anbn();
  for (const char* w : {"a b", "a a b b", "a a a b b b"}) {
    auto r = derives(g, word(w), g.start, 100000);
    REQUIRE(r.yes());
    CHECK(replay_trace(g, g.start, r.trace) == word(w));
  }
  for (const char* w : {"a", "b a", "a b a", "a a b", "a b b"}) {
    CHECK(derives(g, word(w), g.start, 100000).status == DeriveStatus::No);
  }
}

TEST_CASE("expand-only grammars exhaust instead of reporting Unknown") {
  BinaryGrammar g = anbn();
  auto r = derives(g, word("a b a"), g.start, 10000);
  CHECK(r.status == DeriveStatus::No);
}

TEST_CASE("reduce productions make longer intermediate strings reachable") {
  BinaryGrammar g = anbn();
  g.add_reduce(at("a"), at("a"), at("t"));
  // a t => a a a b is only reachable by expanding past the target length
  RewriteTrace t{{1, 0}, {2, 1}, {0, 1}, {3, 0}, {2, 0}, {0, 0}};
  SymbolString w = replay_trace(g, g.start, t);
  auto r = derives(g, w, g.start, 1000000);
  REQUIRE(r.yes());
  CHECK(replay_trace(g, g.start, r.trace) == w);
}

TEST_CASE("tiny step budgets report Unknown") {
  BinaryGrammar g = anbn();
  auto r = derives(g, word("a a a a b b b b"), g.start, 3);
  CHECK(r.status == DeriveStatus::Unknown);
}

TEST_CASE("validation catches malformed grammars") {
  BinaryGrammar g = anbn();
  g.add_expand(at("s"), at("x"), at("b"));
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);

  BinaryGrammar bad{{at("s")}, {at("s")}, at("s"), {}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  BinaryGrammar nostart{{at("s")}, {at("a")}, at("a"), {}};
  CHECK_THROWS_AS(nostart.validate(), std::invalid_argument);
}

TEST_CASE("unit productions go through a fresh expand/reduce pair") {
  BinaryGrammar g = anbn();
  g.terminals.push_back(at("c"));
  FreshAtoms fresh;
  add_unit_production(g, at("s"), at("c"), fresh);
  auto r = derives(g, word("c"), g.start, 100000);
  REQUIRE(r.yes());
  CHECK(replay_trace(g, g.start, r.trace) == word("c"));
}

TEST_CASE("grammar text round trip") {
  BinaryGrammar g = anbn();
  g.add_reduce(at("a"), at("a"), at("t"));
  std::ostringstream os;
  write_grammar(os, g);
  std::istringstream is(os.str());
  BinaryGrammar back = read_grammar(is);
  CHECK(back.nonterminals == g.nonterminals);
  CHECK(back.terminals == g.terminals);
  CHECK(back.start == g.start);
  CHECK(back.productions == g.productions);

  std::istringstream bad("start: s\nnonterminals: s\nxyz");
  CHECK_THROWS_AS(read_grammar(bad), std::runtime_error);
  std::istringstream nostart("nonterminals: s\nterminals: a\n");
  CHECK_THROWS_AS(read_grammar(nostart), std::runtime_error);
}
