#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "regal/engine.hpp"
#include "regal/grammar.hpp"
#include "regal/interp.hpp"
#include "regal/parse.hpp"
#include "regal/report.hpp"
#include "regal/restriction.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

regal::WideningVariant variant_from(const std::string& name) {
  if (name == "count") return regal::WideningVariant::occurrence_count;
  if (name == "depth") return regal::WideningVariant::depth_bound;
  return regal::WideningVariant::principal_label;
}

std::optional<uint32_t> cap_from(const std::string& text) {
  if (text == "none") return std::nullopt;
  size_t pos = 0;
  unsigned long v = std::stoul(text, &pos);
  if (pos != text.size())
    throw std::runtime_error("invalid --max-iter value: " + text);
  return static_cast<uint32_t>(v);
}

regal::ReportFormat format_from(const std::string& name) {
  return name == "json" ? regal::ReportFormat::json : regal::ReportFormat::text;
}

struct Options {
  std::string program_path;
  std::string spec_path;
  uint32_t k = 1;
  std::string widening = "principal";
  std::string max_iter = "10000";
  bool trace = false;
  std::string format = "text";
  bool verify_sound = false;
  uint32_t goal_depth = 3;
  uint32_t deriv_depth = 12;
  bool timing = false;
  std::string gram_op;
  std::vector<std::string> gram_files;
};

int run_infer(const Options& opt) {
  regal::Program program = regal::parse_program(read_file(opt.program_path));
  regal::TermGrammar g0 =
      regal::parse_grammar(read_file(opt.spec_path), *program.symbols_ptr());
  regal::WideningConfig cfg{variant_from(opt.widening), opt.k};

  const auto t0 = std::chrono::steady_clock::now();
  regal::AnalysisResult result =
      regal::analyze(program, g0, cfg, cap_from(opt.max_iter));
  const auto t1 = std::chrono::steady_clock::now();

  regal::AnalysisReport report =
      regal::make_report(opt.program_path, program, result, cfg);
  report.show_trace = opt.trace;
  report.show_timing = opt.timing;
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::cout << regal::render(report, format_from(opt.format));

  bool sound_ok = true;
  if (opt.verify_sound) {
    regal::SoundnessReport sr = regal::soundness_suite(
        program, g0, result.grammar, opt.goal_depth, opt.deriv_depth);
    sound_ok = sr.pass;
    if (format_from(opt.format) == regal::ReportFormat::json) {
      nlohmann::ordered_json j;
      j["soundness"] = {
          {"pass", sr.pass},
          {"goals", sr.goals},
          {"calls_checked", sr.calls_checked},
          {"successes_checked", sr.successes_checked},
          {"any_truncated", sr.any_truncated},
          {"counterexample",
           sr.counterexample ? nlohmann::ordered_json(sr.counterexample->str())
                             : nlohmann::ordered_json()},
      };
      std::cout << j.dump(2) << "\n";
    } else {
      if (sr.pass) {
        std::cout << "soundness: pass (goals=" << sr.goals
                  << " calls=" << sr.calls_checked
                  << " successes=" << sr.successes_checked << ")\n";
      } else {
        std::cout << "soundness: FAIL"
                  << (sr.counterexample_is_call ? " call " : " success ")
                  << (sr.counterexample ? sr.counterexample->str()
                                        : std::string("(unknown)"))
                  << " is outside the inferred type\n";
      }
    }
  }

  return (result.warnings.empty() && sound_ok) ? 0 : 1;
}

int run_check(const Options& opt) {
  regal::Program program = regal::parse_program(read_file(opt.program_path));
  regal::TermGrammar spec =
      regal::parse_grammar(read_file(opt.spec_path), *program.symbols_ptr());
  regal::WideningConfig cfg{variant_from(opt.widening), opt.k};
  regal::CheckResult result =
      regal::check_specification(program, spec, cfg);
  regal::CheckReport report{opt.program_path, opt.spec_path, result};
  std::cout << regal::render_check(report, format_from(opt.format));
  return result.correct ? 0 : 1;
}

int run_gram(const Options& opt) {
  using regal::TermGrammar;
  regal::WideningConfig cfg{variant_from(opt.widening), opt.k};
  auto symbols = std::make_shared<regal::SymbolTable>();
  const std::string& op = opt.gram_op;

  auto need = [&](size_t n) {
    if (opt.gram_files.size() != n)
      throw std::runtime_error("gram " + op + " takes " + std::to_string(n) +
                               " grammar file(s)");
  };

  if (op == "restrict") {
    need(1);
    TermGrammar g = regal::parse_grammar(read_file(opt.gram_files[0]), *symbols);
    std::cout << regal::to_text(regal::restrict_grammar(regal::normalize(g), cfg));
    return 0;
  }

  need(2);
  TermGrammar a = regal::parse_grammar(read_file(opt.gram_files[0]), *symbols);
  TermGrammar b = regal::parse_grammar(read_file(opt.gram_files[1]), *symbols);

  if (op == "includes") {
    const bool ca = regal::includes_across(a, TermGrammar::kCa, b, TermGrammar::kCa);
    const bool su = regal::includes_across(a, TermGrammar::kSu, b, TermGrammar::kSu);
    std::cout << "ca: " << (ca ? "true" : "false") << "\n"
              << "su: " << (su ? "true" : "false") << "\n";
    return (ca && su) ? 0 : 1;
  }

  TermGrammar combined = a;
  std::map<regal::VarId, regal::VarId> roots = combined.import(b, false);
  auto fold = [&](regal::VarId root) {
    auto [merged, next] =
        op == "union"
            ? regal::union_vars(combined, root, roots.at(root))
            : regal::intersect_vars(combined, root, roots.at(root));
    combined = std::move(next);
    combined.replace_rules(root, std::vector<regal::GrammarRule>(
                                     combined.rules(merged)));
  };
  fold(TermGrammar::kCa);
  fold(TermGrammar::kSu);
  std::cout << regal::to_text(regal::drop_unreachable(regal::normalize(combined)));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"regal: call/success type inference for logic programs over "
               "term grammars"};
  app.require_subcommand(1);
  Options opt;

  auto add_widening = [&](CLI::App* cmd) {
    cmd->add_option("--k", opt.k, "widening bound (k >= 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--widening", opt.widening,
                    "widening variant: principal|count|depth")
        ->check(CLI::IsMember({"principal", "count", "depth"}));
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* infer = app.add_subcommand(
      "infer", "Infer call and success types of a program");
  infer->add_option("program", opt.program_path, "logic program file")
      ->required();
  infer->add_option("--spec", opt.spec_path,
                    "initial grammar: goals and constraint types")
      ->required();
  add_widening(infer);
  infer->add_option("--max-iter", opt.max_iter, "iteration cap, or 'none'");
  infer->add_flag("--trace", opt.trace, "include per-iteration trace");
  add_format(infer);
  infer->add_flag("--verify-sound", opt.verify_sound,
                  "replay derivations with a bounded interpreter and check "
                  "them against the result");
  infer->add_option("--goal-depth", opt.goal_depth,
                    "goal enumeration depth for --verify-sound");
  infer->add_option("--deriv-depth", opt.deriv_depth,
                    "derivation depth for --verify-sound");
  infer->add_flag("--timing", opt.timing, "include wall time in the report");

  CLI::App* check = app.add_subcommand(
      "check", "Check a program against a specification grammar");
  check->add_option("program", opt.program_path, "logic program file")
      ->required();
  check->add_option("--spec", opt.spec_path, "specification grammar file")
      ->required();
  add_widening(check);
  add_format(check);

  CLI::App* gram = app.add_subcommand(
      "gram", "Grammar algebra on grammar files");
  gram->add_option("op", opt.gram_op,
                   "operation: union|intersect|includes|restrict")
      ->required()
      ->check(CLI::IsMember({"union", "intersect", "includes", "restrict"}));
  gram->add_option("files", opt.gram_files, "grammar file(s)")
      ->required()
      ->expected(1, 2);
  add_widening(gram);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (infer->parsed()) return run_infer(opt);
    if (check->parsed()) return run_check(opt);
    return run_gram(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
