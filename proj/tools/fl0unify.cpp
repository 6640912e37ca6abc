// fl0unify: decide FL0 unification problems from the command line.
//
// Exit status: 0 unifiable / valid / found, 1 not unifiable / invalid / not
// found, 2 input error, 3 internal verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fl0/errors.hpp"
#include "fl0/flatten.hpp"
#include "fl0/frontend.hpp"
#include "fl0/solver.hpp"
#include "fl0/testkit.hpp"

namespace {

enum Exit : int { kYes = 0, kNo = 1, kInput = 2, kVerification = 3 };

fl0::InputFormat parse_format(const std::string& s) {
  if (s == "flu") return fl0::InputFormat::Flu;
  if (s == "ofn") return fl0::InputFormat::AxiomSubset;
  return fl0::InputFormat::Auto;
}

int cmd_solve(const std::string& path, const std::string& format, bool stats, const std::string& log_level,
              const std::string& output, bool show_system, bool parallel) {
  fl0::ProblemSource src = fl0::load_problem(path, parse_format(format));
  fl0::SolveOptions options;
  options.parallel = parallel;
  if (log_level == "fine") options.trace = [](const std::string& line) { std::cerr << "FINE: " << line << '\n'; };
  fl0::SolveResult result = fl0::solve(src, options);

  std::cout << (result.unifiable ? "unifiable" : "not unifiable") << '\n';
  if (result.unifiable) {
    std::vector<fl0::NameId> shown = result.user_variables();
    if (show_system) {
      auto sys = result.system_variables();
      shown.insert(shown.end(), sys.begin(), sys.end());
    }
    std::string text = fl0::render_substitution(result.unifier, shown, result.signature);
    std::cout << text;
    if (!output.empty()) {
      std::ofstream out(output, std::ios::binary);
      if (!out) throw fl0::InputError("cannot write '" + output + "'");
      out << fl0::render_substitution(result.unifier, result.user_variables(), result.signature);
    }
  } else if (result.failed_constant) {
    std::cout << "; no unifier for constant " << result.signature.name(*result.failed_constant) << '\n';
  }
  if (stats) {
    std::cout << "max_variables: " << result.stats.max_variables << '\n'
              << "preprocessing_decided: " << result.stats.preprocessing_decided << '\n'
              << "shortcut_phases: " << result.stats.shortcut_phases << '\n'
              << "constants_processed: " << result.stats.constants_processed << '\n'
              << "elapsed_ms: " << static_cast<long long>(result.stats.elapsed_ms) << '\n';
  }
  return result.unifiable ? kYes : kNo;
}

int cmd_verify(const std::string& problem_path, const std::string& solution_path) {
  fl0::ProblemSource problem = fl0::load_problem(problem_path);
  fl0::ProblemSource solution = fl0::parse_text(fl0::read_file(solution_path), problem.signature);
  fl0::Substitution sigma = fl0::read_substitution(solution);
  bool ok = fl0::verify_unifier(fl0::goal_subsumptions(problem), sigma, solution.signature);
  std::cout << (ok ? "valid" : "invalid") << '\n';
  return ok ? kYes : kNo;
}

int cmd_dump(const std::string& path, const std::string& stage) {
  fl0::ProblemSource src = fl0::load_problem(path);
  fl0::FiloModel model = fl0::flatten_one(src);
  if (stage == "model") {
    std::cout << fl0::render_model(model);
    return kYes;
  }
  const std::string prefix = "generic:";
  if (!stage.starts_with(prefix)) throw fl0::InputError("unknown stage '" + stage + "'");
  std::string name = stage.substr(prefix.size());
  auto constant = model.signature.find_name(name);
  if (!constant || !model.signature.is_constant(*constant)) {
    throw fl0::InputError("'" + name + "' is not a constant of the problem");
  }
  auto subs = fl0::split_and_project(model, *constant);
  std::cout << fl0::render_generic_goal(fl0::flatten_two(subs, *constant, model.signature));
  return kYes;
}

int cmd_oracle(const std::string& path, int depth) {
  fl0::ProblemSource src = fl0::load_problem(path);
  fl0::testkit::OracleResult r = fl0::testkit::oracle_search(src, depth);
  if (!r.found) {
    std::cout << "not found within depth " << depth << '\n';
    return kNo;
  }
  std::vector<fl0::NameId> vars;
  for (fl0::NameId n : src.signature.names()) {
    if (src.signature.is_variable(n)) vars.push_back(n);
  }
  std::cout << "found\n" << fl0::render_substitution(*r.found, vars, src.signature);
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide unifiability of FL0 concept subsumptions"};
  app.require_subcommand(1);

  std::string file, format = "auto", log_level = "info", output;
  bool stats = false, show_system = false, parallel = false;
  auto* solve = app.add_subcommand("solve", "Decide a problem and print a unifier if one exists");
  solve->add_option("file", file, "Problem file (.flu or functional axiom subset)")->required();
  solve->add_option("--format", format, "Input syntax")->check(CLI::IsMember({"flu", "ofn", "auto"}));
  solve->add_flag("--stats", stats, "Print counters and elapsed time");
  solve->add_option("--log-level", log_level, "info, or fine to trace every choice on stderr")
      ->check(CLI::IsMember({"info", "fine"}));
  solve->add_option("--output", output, "Also write the unifier to this file");
  solve->add_flag("--show-system-vars", show_system, "Include system variables in the printed unifier");
  solve->add_flag("--parallel", parallel, "One thread per constant");

  std::string problem, solution;
  auto* verify = app.add_subcommand("verify", "Check a solution file against a problem");
  verify->add_option("problem", problem)->required();
  verify->add_option("solution", solution)->required();

  std::string stage;
  auto* dump = app.add_subcommand("dump", "Print an intermediate stage");
  dump->add_option("file", file)->required();
  dump->add_option("--stage", stage, "model, or generic:<CONSTANT>")->required();

  int depth = 1;
  auto* oracle = app.add_subcommand("oracle", "Brute-force search for a bounded-depth unifier (small inputs)");
  oracle->add_option("file", file)->required();
  oracle->add_option("--depth", depth, "Maximal role depth of particles")->check(CLI::Range(0, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  try {
    if (*solve) return cmd_solve(file, format, stats, log_level, output, show_system, parallel);
    if (*verify) return cmd_verify(problem, solution);
    if (*dump) return cmd_dump(file, stage);
    if (*oracle) return cmd_oracle(file, depth);
  } catch (const fl0::VerificationFailure& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kVerification;
  } catch (const fl0::testkit::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const fl0::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
