#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fracvar/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  bool quiet = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "experiment config file (key = value lines)")
      ->required();
  sub->add_option("--out", args.out_dir, "output directory for artifacts");
  sub->add_flag("--quiet", args.quiet, "suppress progress output");
}

int config_failure(const std::string& detail) {
  std::cerr << "error exit=" << fracvar::kExitValidation << " reason=config detail=\"" << detail
            << "\"\n";
  return fracvar::kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete fractional variational experiments"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* solve =
      app.add_subcommand("solve", "solve the boundary value problem, write the trajectory");
  CLI::App* conserve =
      app.add_subcommand("conserve", "solve, then evaluate the discrete conservation law");
  CLI::App* transfer =
      app.add_subcommand("transfer-check", "verify the continuous transfer identities");
  CLI::App* dump = app.add_subcommand("dump-matrix", "write a shift matrix A_r as CSV");
  for (CLI::App* sub : {solve, conserve, transfer, dump}) add_common(sub, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fracvar::kExitValidation;
  }

  std::ifstream in(args.config_path);
  if (!in) return config_failure("cannot read config file '" + args.config_path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();

  const fracvar::ParseOutcome parsed = fracvar::parse_config(buffer.str());
  if (!parsed.config) {
    for (const fracvar::ConfigIssue& issue : parsed.issues) {
      std::cerr << args.config_path;
      if (issue.line > 0) std::cerr << ':' << issue.line;
      std::cerr << ": " << issue.message << "\n";
    }
    return config_failure(std::to_string(parsed.issues.size()) + " config issue(s) in '" +
                          args.config_path + "'");
  }

  const fracvar::ExperimentKind expected = transfer->parsed()
                                               ? fracvar::ExperimentKind::transfer_check
                                               : dump->parsed()
                                                     ? fracvar::ExperimentKind::matrix_dump
                                                     : fracvar::ExperimentKind::solve_and_conserve;
  if (parsed.config->kind != expected)
    return config_failure("config kind '" + fracvar::to_string(parsed.config->kind) +
                          "' does not match this subcommand (expects '" +
                          fracvar::to_string(expected) + "')");

  const fracvar::RunOutcome outcome = fracvar::run_experiment(
      *parsed.config, args.out_dir, args.quiet, &std::cout, solve->parsed());
  if (outcome.exit_code != 0) std::cerr << outcome.error_line << "\n";
  return outcome.exit_code;
}
