#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lambek/lexicon.hpp"

using namespace lambek;

namespace {
std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::vector<ParseOutcome> run(const std::string& sentence,
                              const std::string& target,
                              const Lexicon& lex = builtin_lexicon()) {
  return parse_sentence(split(sentence), lex, parse_formula(target),
                        Budget::generous());
}
}  // namespace

TEST_CASE("lexicon lookups and ambiguity") {
  Lexicon lex = builtin_lexicon();
  CHECK(lex.lookup("John").size() == 1);
  CHECK(lex.lookup("John")[0] == parse_formula("np"));
  CHECK_THROWS_AS(lex.lookup("xyzzy"), std::invalid_argument);
  lex.add("bank", "n");
  lex.add("bank", "(np\\s)/np");
  CHECK(lex.lookup("bank").size() == 2);
  CHECK_THROWS_AS(lex.add("", "n"), std::invalid_argument);
}

TEST_CASE("sentence_to_sequents builds the cartesian product") {
  Lexicon lex;
  lex.add("a", "p");
  lex.add("a", "q");
  lex.add("b", "r");
  auto seqs = sentence_to_sequents({"a", "b", "a"}, lex, parse_formula("s"));
  CHECK(seqs.size() == 4);
  CHECK(seqs[0] == parse_sequent("p, r, p -> s"));
  CHECK(seqs[3] == parse_sequent("q, r, q -> s"));
}

TEST_CASE("simple sentences") {
  CHECK(parses(run("John met Pete", "s")));
  CHECK(parses(run("John runs", "s")));
  CHECK(parses(run("John met Pete yesterday", "s")));
  CHECK_FALSE(parses(run("met John Pete", "s")));
  CHECK_FALSE(parses(run("John met Pete yesterday", "np")));
  CHECK_FALSE(parses(run("John Pete", "s")));
}

TEST_CASE("relative clauses use the modality") {
  auto outs = run("the person whom John met yesterday", "np");
  REQUIRE(parses(outs));
  for (const auto& o : outs)
    if (o.result.derivable())
      CHECK(checks(o.result.derivation, System::bang_lstar()));
}

TEST_CASE("parasitic extraction needs contraction") {
  auto outs = run("the paper that John signed without reading", "np");
  REQUIRE(parses(outs));
  for (const auto& o : outs)
    if (o.result.derivable()) {
      CHECK(checks(o.result.derivation, System::bang_lstar()));
      CHECK(o.result.derivation->count_rule(RuleKind::Contr) >= 1);
    }
}

TEST_CASE("an over-slash adverb type cannot reach across the verb") {
  Lexicon lex = builtin_lexicon();
  lex.entries["yesterday"] = {parse_formula("(np\\s)/(np\\s)")};
  CHECK_FALSE(parses(run("the person whom John met yesterday", "np", lex)));
}

TEST_CASE("lexicon text round trip and error reporting") {
  Lexicon lex = builtin_lexicon();
  std::ostringstream os;
  write_lexicon(os, lex);
  std::istringstream is(os.str());
  Lexicon back = read_lexicon(is);
  CHECK(back.entries == lex.entries);

  std::istringstream commented("# comment\nfoo: np/n  # trailing\n\n");
  Lexicon c = read_lexicon(commented);
  CHECK(c.lookup("foo")[0] == parse_formula("np/n"));

  std::istringstream nocolon("foo np");
  CHECK_THROWS_AS(read_lexicon(nocolon), std::runtime_error);
  std::istringstream badformula("foo: np//");
  CHECK_THROWS_AS(read_lexicon(badformula), std::runtime_error);
}
