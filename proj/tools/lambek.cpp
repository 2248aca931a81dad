// Command-line surface for the calculus toolkit.
//
// Exit codes: 0 definitive positive, 1 definitive negative, 2 unknown,
// 3 usage or I/O error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lambek/cut.hpp"
#include "lambek/encoding.hpp"
#include "lambek/lexicon.hpp"
#include "lambek/oracle.hpp"

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 3;

struct Options {
  std::string system = "banglstar";
  long budget = 0;  // 0 = derive a default from the input
  bool tree = false;
  bool json = false;
};

lambek::System load_system(const std::string& spec) {
  if (spec == "lstar") return lambek::System::lstar();
  if (spec == "banglstar") return lambek::System::bang_lstar();
  const std::string prefix = "lstar+R:";
  if (spec.rfind(prefix, 0) == 0) {
    std::string path = spec.substr(prefix.size());
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open ruleset file `" + path + "`");
    return lambek::System::lstar_plus(lambek::read_ruleset(is));
  }
  throw std::runtime_error(
      "unknown system `" + spec + "` (expected lstar, banglstar or lstar+R:<file>)");
}

lambek::Budget pick_budget(const lambek::Sequent& goal, const Options& opt) {
  if (opt.budget > 0) return lambek::Budget::generous(opt.budget);
  if (lambek::classify(goal).bang_on_vars_only) {
    const int n = goal.size();
    return {n - 1, 2 * n - 1, 0};
  }
  return lambek::Budget::generous();
}

void emit_result(const lambek::Sequent& goal, const lambek::ProveResult& r,
                 const Options& opt) {
  if (opt.json) {
    nlohmann::ordered_json j;
    j["sequent"] = lambek::format_sequent(goal);
    j["verdict"] = r.derivable() ? "DERIVABLE"
                   : r.verdict == lambek::Verdict::NotDerivable
                       ? "NOT_DERIVABLE"
                       : "UNKNOWN";
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (opt.tree && r.derivation) j["derivation"] = to_json(*r.derivation);
    std::cout << j.dump(2) << "\n";
    return;
  }
  switch (r.verdict) {
    case lambek::Verdict::Derivable: std::cout << "DERIVABLE\n"; break;
    case lambek::Verdict::NotDerivable: std::cout << "NOT_DERIVABLE\n"; break;
    case lambek::Verdict::Unknown:
      std::cout << "UNKNOWN" << (r.reason.empty() ? "" : " (" + r.reason + ")")
                << "\n";
      break;
  }
  if (opt.tree && r.derivation)
    std::cout << lambek::serialize_derivation(*r.derivation) << "\n";
}

int verdict_exit(const lambek::ProveResult& r) {
  switch (r.verdict) {
    case lambek::Verdict::Derivable: return kPositive;
    case lambek::Verdict::NotDerivable: return kNegative;
    default: return kUnknown;
  }
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open `" + path + "`");
  return std::string(std::istreambuf_iterator<char>(is), {});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prover, checker and grammar toolkit for the Lambek calculus "
               "with a relevant modality"};
  app.require_subcommand(1);
  Options opt;

  std::string sequent_text, file_arg, target_text = "s", lexicon_path,
                             output_path = "-";
  long bound = 0;
  std::vector<std::string> words;

  auto add_common = [&](CLI::App* cmd, bool with_system = true) {
    if (with_system)
      cmd->add_option("--system", opt.system,
                      "lstar | banglstar | lstar+R:<ruleset-file>");
    cmd->add_option("--budget", opt.budget,
                    "search node budget (default: fragment-derived)");
    cmd->add_flag("--tree", opt.tree, "print the derivation");
    cmd->add_flag("--json", opt.json, "JSON output");
  };

  auto* prove_cmd = app.add_subcommand("prove", "budgeted proof search");
  prove_cmd->add_option("sequent", sequent_text)->required();
  add_common(prove_cmd);

  auto* decide_cmd = app.add_subcommand(
      "decide", "terminating decision for ! restricted to variables");
  decide_cmd->add_option("sequent", sequent_text)->required();
  add_common(decide_cmd, /*with_system=*/false);

  auto* check_cmd =
      app.add_subcommand("check", "validate a serialized derivation");
  check_cmd->add_option("derivation", file_arg, "JSON file or - for stdin")
      ->required();
  add_common(check_cmd);

  auto* parse_cmd =
      app.add_subcommand("parse", "parse a sentence with a categorial lexicon");
  parse_cmd->add_option("words", words)->required();
  parse_cmd->add_option("--target", target_text, "target type (default s)");
  parse_cmd->add_option("--lexicon", lexicon_path,
                        "lexicon file (default: built-in)");
  add_common(parse_cmd, /*with_system=*/false);

  auto* encode_cmd =
      app.add_subcommand("encode", "encode a binary grammar as a ruleset");
  encode_cmd->add_option("grammar", file_arg, "grammar file or - for stdin")
      ->required();
  encode_cmd->add_option("-o,--output", output_path,
                         "ruleset output file (default stdout)");
  encode_cmd->add_flag("--json", opt.json, "also print the pair table");

  auto* embed_cmd = app.add_subcommand(
      "embed", "print a sequent embedded under the image of a ruleset");
  embed_cmd->add_option("sequent", sequent_text)->required();
  embed_cmd
      ->add_option("--system", opt.system, "must be lstar+R:<ruleset-file>")
      ->required();

  auto* deduce_cmd = app.add_subcommand(
      "deduce", "search for a rule-image subset proving the embedded sequent");
  deduce_cmd->add_option("sequent", sequent_text)->required();
  deduce_cmd
      ->add_option("--system", opt.system, "must be lstar+R:<ruleset-file>")
      ->required();
  deduce_cmd->add_option("--budget", opt.budget);
  deduce_cmd->add_flag("--tree", opt.tree);
  deduce_cmd->add_flag("--json", opt.json);

  auto* oracle_cmd =
      app.add_subcommand("oracle", "forward-saturation derivability oracle");
  oracle_cmd->add_option("sequent", sequent_text)->required();
  oracle_cmd->add_option("--system", opt.system,
                         "lstar | banglstar | lstar+R:<ruleset-file>");
  oracle_cmd->add_option("--bound", bound,
                         "derivation node bound (default 12n^2+3n)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prove_cmd->parsed()) {
      lambek::Sequent goal = lambek::parse_sequent(sequent_text);
      lambek::System sys = load_system(opt.system);
      lambek::ProveResult r = lambek::prove(goal, sys, pick_budget(goal, opt));
      emit_result(goal, r, opt);
      return verdict_exit(r);
    }

    if (decide_cmd->parsed()) {
      lambek::Sequent goal = lambek::parse_sequent(sequent_text);
      lambek::ProveResult r = lambek::decide_restricted(goal);
      emit_result(goal, r, opt);
      return verdict_exit(r);
    }

    if (check_cmd->parsed()) {
      lambek::DerivationPtr d = lambek::parse_derivation(read_file(file_arg));
      lambek::System sys = load_system(opt.system);
      lambek::CheckResult err = lambek::check_derivation(*d, sys);
      if (opt.json) {
        nlohmann::ordered_json j;
        j["conclusion"] = lambek::format_sequent(d->conclusion());
        j["valid"] = !err.has_value();
        if (err) j["error"] = err->to_string();
        std::cout << j.dump(2) << "\n";
      } else if (err) {
        std::cout << "INVALID: " << err->to_string() << "\n";
      } else {
        std::cout << "VALID " << lambek::format_sequent(d->conclusion())
                  << "\n";
      }
      return err ? kNegative : kPositive;
    }

    if (parse_cmd->parsed()) {
      lambek::Lexicon lex = lambek::builtin_lexicon();
      if (!lexicon_path.empty()) {
        std::ifstream is(lexicon_path);
        if (!is)
          throw std::runtime_error("cannot open lexicon `" + lexicon_path + "`");
        lex = lambek::read_lexicon(is);
      }
      lambek::Formula target = lambek::parse_formula(target_text);
      lambek::Budget budget = opt.budget > 0
                                  ? lambek::Budget::generous(opt.budget)
                                  : lambek::Budget::generous();
      auto outcomes = lambek::parse_sentence(words, lex, target, budget);
      bool any_unknown = false;
      const lambek::ParseOutcome* success = nullptr;
      for (const auto& o : outcomes) {
        if (o.result.derivable() && !success) success = &o;
        any_unknown |= o.result.verdict == lambek::Verdict::Unknown;
      }
      if (opt.json) {
        nlohmann::ordered_json j;
        j["parses"] = success != nullptr;
        j["candidates"] = nlohmann::ordered_json::array();
        for (const auto& o : outcomes) {
          nlohmann::ordered_json c;
          c["sequent"] = lambek::format_sequent(o.sequent);
          c["verdict"] = o.result.derivable() ? "DERIVABLE"
                         : o.result.verdict == lambek::Verdict::NotDerivable
                             ? "NOT_DERIVABLE"
                             : "UNKNOWN";
          if (opt.tree && o.result.derivation)
            c["derivation"] = to_json(*o.result.derivation);
          j["candidates"].push_back(std::move(c));
        }
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& o : outcomes)
          std::cout << lambek::format_sequent(o.sequent) << " : "
                    << (o.result.derivable() ? "DERIVABLE"
                        : o.result.verdict == lambek::Verdict::NotDerivable
                            ? "NOT_DERIVABLE"
                            : "UNKNOWN")
                    << "\n";
        std::cout << (success ? "PARSES\n" : "NO_PARSE\n");
        if (opt.tree && success)
          std::cout << lambek::serialize_derivation(*success->result.derivation)
                    << "\n";
      }
      if (success) return kPositive;
      return any_unknown ? kUnknown : kNegative;
    }

    if (encode_cmd->parsed()) {
      std::istringstream gs(read_file(file_arg));
      lambek::BinaryGrammar g = lambek::read_grammar(gs);
      lambek::EncodedSystem enc = lambek::encode_grammar(g);
      std::ostringstream rs;
      lambek::write_ruleset(rs, enc.ruleset);
      if (output_path == "-") {
        std::cout << rs.str();
      } else {
        std::ofstream os(output_path);
        if (!os)
          throw std::runtime_error("cannot write `" + output_path + "`");
        os << rs.str();
      }
      if (opt.json) std::cout << pair_table_json(enc).dump(2) << "\n";
      return kPositive;
    }

    if (embed_cmd->parsed()) {
      lambek::Sequent goal = lambek::parse_sequent(sequent_text);
      lambek::System sys = load_system(opt.system);
      if (sys.rules.empty())
        throw std::runtime_error("embed requires --system lstar+R:<file>");
      std::cout << lambek::format_sequent(
                       lambek::embed(lambek::gamma(sys.rules), goal))
                << "\n";
      return kPositive;
    }

    if (deduce_cmd->parsed()) {
      lambek::Sequent goal = lambek::parse_sequent(sequent_text);
      lambek::System sys = load_system(opt.system);
      if (sys.rules.empty())
        throw std::runtime_error("deduce requires --system lstar+R:<file>");
      lambek::DeductionResult r =
          lambek::deduction_search(goal, sys.rules, pick_budget(goal, opt));
      if (opt.json) {
        nlohmann::ordered_json j;
        j["status"] = r.status == lambek::DeductionStatus::Found ? "FOUND"
                      : r.status == lambek::DeductionStatus::NotFound
                          ? "NOT_FOUND"
                          : "UNKNOWN";
        if (r.status == lambek::DeductionStatus::Found) {
          j["bang_set"] = nlohmann::ordered_json::array();
          for (const auto& f : r.bang_set)
            j["bang_set"].push_back(lambek::format_formula(f));
          if (opt.tree) j["derivation"] = to_json(*r.derivation);
        }
        std::cout << j.dump(2) << "\n";
      } else if (r.status == lambek::DeductionStatus::Found) {
        std::cout << "FOUND {";
        for (std::size_t i = 0; i < r.bang_set.size(); ++i)
          std::cout << (i ? ", " : " ") << lambek::format_formula(r.bang_set[i]);
        std::cout << (r.bang_set.empty() ? "}\n" : " }\n");
        if (opt.tree)
          std::cout << lambek::serialize_derivation(*r.derivation) << "\n";
      } else {
        std::cout << (r.status == lambek::DeductionStatus::NotFound
                          ? "NOT_FOUND\n"
                          : "UNKNOWN\n");
      }
      switch (r.status) {
        case lambek::DeductionStatus::Found: return kPositive;
        case lambek::DeductionStatus::NotFound: return kNegative;
        default: return kUnknown;
      }
    }

    if (oracle_cmd->parsed()) {
      lambek::Sequent goal = lambek::parse_sequent(sequent_text);
      lambek::System sys = load_system(opt.system);
      const long n = goal.size();
      const long b = bound > 0 ? bound : 12 * n * n + 3 * n;
      try {
        bool yes = lambek::brute_force_derivable(goal, sys, b);
        std::cout << (yes ? "DERIVABLE\n" : "NOT_DERIVABLE\n");
        return yes ? kPositive : kNegative;
      } catch (const lambek::OracleOverflow& e) {
        std::cout << "UNKNOWN (" << e.what() << ")\n";
        return kUnknown;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
