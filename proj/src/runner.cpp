#include "fracvar/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "fracvar/csv.hpp"
#include "fracvar/dynamics.hpp"
#include "fracvar/noether.hpp"

namespace fracvar {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RunOutcome failure(int code, const std::string& reason, std::string detail) {
  for (char& c : detail)
    if (c == '"') c = '\'';
  RunOutcome out;
  out.exit_code = code;
  out.error_line = "error exit=" + std::to_string(code) + " reason=" + reason + " detail=\"" +
                   detail + "\"";
  return out;
}

std::ofstream open_artifact(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

SymmetryGroup resolve_symmetry(const ExperimentConfig& config) {
  if (config.symmetry == "rotation2d") return rotation_group_2d();
  if (config.symmetry == "translation") return translation_group(config.symmetry_direction);
  throw std::invalid_argument("unknown symmetry '" + config.symmetry + "'");
}

RunOutcome run_solve(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                     bool quiet, std::ostream* log, bool solve_only) {
  const auto& lagrangians = lagrangian_registry();
  const auto entry = lagrangians.find(config.lagrangian);
  if (entry == lagrangians.end())
    return failure(kExitValidation, "unknown_lagrangian",
                   "no registered lagrangian named '" + config.lagrangian + "'");
  const Lagrangian lagrangian = entry->second(config.dim);

  SymmetryGroup group;
  if (!solve_only) {
    try {
      group = resolve_symmetry(config);
    } catch (const std::exception& e) {
      return failure(kExitValidation, "unknown_symmetry", e.what());
    }
  }

  const Grid grid(config.a, config.b, config.n_steps);
  const FracOrder alpha(config.alpha);
  const SolveResult solved =
      solve_bvp(lagrangian, alpha, grid, config.q0, config.qn, config.solver);

  const std::string trajectory_name =
      config.output_path.empty() ? "trajectory.csv" : config.output_path;
  const std::filesystem::path trajectory_path = out_dir / trajectory_name;
  write_trajectory_csv(trajectory_path.string(), solved.trajectory);
  if (log && !quiet)
    *log << "solve: N=" << config.n_steps << " d=" << config.dim << " alpha=" << config.alpha
         << " iters=" << solved.iterations << " residual=" << fmt(solved.residual_norm) << "\n"
         << "wrote " << trajectory_path.string() << "\n";

  if (!solved.ok()) {
    const char* reason =
        solved.status == SolveStatus::singular_jacobian ? "singular_jacobian" : "non_convergence";
    return failure(kExitSolverFailure, reason,
                   "solver stopped after " + std::to_string(solved.iterations) +
                       " iterations with residual " + fmt(solved.residual_norm));
  }
  if (solve_only) return {};

  const NoetherInputs inputs = noether_inputs(lagrangian, group, solved.trajectory, alpha);
  const std::vector<double> samples =
      conserved_quantity(inputs.generator_samples, inputs.momentum_samples, alpha);
  const ConservationReport report = constancy_report(samples);

  const std::filesystem::path conservation_path = out_dir / "conservation.csv";
  write_conservation_csv(conservation_path.string(), grid, samples);
  if (log && !quiet)
    *log << "conserve: c_ref=" << fmt(report.c_ref) << " rel_spread=" << fmt(report.rel_spread)
         << " max_abs_dev=" << fmt(report.max_abs_dev)
         << " first_node_dev=" << fmt(report.first_node_dev)
         << " final_node_dev=" << fmt(report.final_node_dev) << "\n"
         << "wrote " << conservation_path.string() << "\n";

  if (!(report.rel_spread <= config.constancy_tol))
    return failure(kExitConstancyFailure, "constancy",
                   "rel_spread " + fmt(report.rel_spread) + " exceeds constancy_tol " +
                       fmt(config.constancy_tol));
  return {};
}

RunOutcome run_transfer(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                        bool quiet, std::ostream* log) {
  const auto& pairs = transfer_pair_registry();
  const auto entry = pairs.find(config.pair_name);
  if (entry == pairs.end())
    return failure(kExitValidation, "unknown_pair",
                   "no registered function pair named '" + config.pair_name + "'");
  const TransferPair& pair = entry->second;
  if (pair.needs_positive_a && !(config.a > 0.0))
    return failure(kExitValidation, "domain",
                   "pair '" + config.pair_name + "' needs a > 0");

  const FracOrder alpha(config.alpha);
  const std::vector<double> t_grid = interior_grid(config.a, config.b, config.t_points);

  double worst_residual = 0.0;
  {
    std::ofstream out = open_artifact(out_dir / "leibniz.csv");
    out << "p,residual_minus,residual_plus,residual\n";
    for (int p = 1; p <= config.p_max; ++p) {
      const LeibnizCheckResult check = leibniz_step_check(pair.f, pair.g, alpha, p, t_grid,
                                                          config.a, config.b, config.quad_panels);
      out << p << ',' << fmt(check.max_residual_minus) << ',' << fmt(check.max_residual_plus)
          << ',' << fmt(check.max_residual) << '\n';
      worst_residual = std::max(worst_residual, check.max_residual);
    }
  }

  {
    std::ofstream out = open_artifact(out_dir / "truncation.csv");
    out << "P,tail_estimate,max_abs_value\n";
    for (int trunc = 0; trunc <= config.truncation; ++trunc) {
      const TruncationResult sum =
          truncated_transfer_sum(pair.f, pair.g, alpha, trunc, t_grid, config.a, config.b,
                                 config.quad_panels);
      double peak = 0.0;
      for (const double v : sum.samples) peak = std::max(peak, std::fabs(v));
      out << trunc << ',' << (sum.tail_available ? fmt(sum.tail_estimate) : "nan") << ','
          << fmt(peak) << '\n';
    }
  }

  const ConditionCDiagnostic diag =
      condition_c_diagnostic(pair.f, pair.g, alpha, config.p_max, t_grid, config.a, config.b,
                             config.quad_panels);
  {
    std::ofstream out = open_artifact(out_dir / "condition_c.csv");
    out << "p,factorial_bound_f,factorial_bound_g,sup_f,sup_g,cross_minus,cross_plus\n";
    for (const ConditionCRow& row : diag.rows)
      out << row.p << ',' << fmt(row.factorial_bound_f) << ',' << fmt(row.factorial_bound_g)
          << ',' << fmt(row.sup_f) << ',' << fmt(row.sup_g) << ',' << fmt(row.cross_minus) << ','
          << fmt(row.cross_plus) << '\n';
  }

  if (log && !quiet)
    *log << "transfer: pair=" << config.pair_name << " alpha=" << config.alpha
         << " p_max=" << config.p_max << " max_residual=" << fmt(worst_residual) << "\n"
         << "condition_c: factorial_f=" << diag.factorial_bound_f_to_zero
         << " factorial_g=" << diag.factorial_bound_g_to_zero
         << " sup_bounded=" << diag.sup_norms_bounded
         << " cross_to_zero=" << diag.cross_terms_to_zero << "\n"
         << "wrote " << (out_dir / "leibniz.csv").string() << ", "
         << (out_dir / "truncation.csv").string() << ", "
         << (out_dir / "condition_c.csv").string() << "\n";

  if (!(worst_residual <= config.transfer_tol))
    return failure(kExitConstancyFailure, "transfer_residual",
                   "identity residual " + fmt(worst_residual) + " exceeds transfer_tol " +
                       fmt(config.transfer_tol));
  return {};
}

RunOutcome run_matrix_dump(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                           bool quiet, std::ostream* log) {
  const ShiftMatrix matrix = build_shift_matrix(config.shift_order, config.n_steps);
  const std::filesystem::path path =
      out_dir / ("A_r" + std::to_string(config.shift_order) + "_N" +
                 std::to_string(config.n_steps) + ".csv");
  write_matrix_csv(path.string(), matrix);
  if (log && !quiet) *log << "wrote " << path.string() << "\n";
  return {};
}

}  // namespace

const std::map<std::string, std::function<Lagrangian(int)>>& lagrangian_registry() {
  static const std::map<std::string, std::function<Lagrangian(int)>> registry = {
      {"quadratic", [](int) { return quadratic_lagrangian(); }},
      {"free_particle", [](int) { return free_particle_lagrangian(); }},
      {"xv", [](int) { return bilinear_lagrangian(); }},
  };
  return registry;
}

const std::map<std::string, TransferPair>& transfer_pair_registry() {
  static const std::map<std::string, TransferPair> registry = {
      {"linear_linear", {polynomial({0.0, 1.0}), polynomial({0.0, 1.0}), false}},
      {"poly_poly", {polynomial({2.0, -1.0, 3.0}), polynomial({1.0, 1.0, -1.0, 0.5}), false}},
      {"poly_exp", {polynomial({1.0, 2.0, 1.0}), exponential(1.0, 1.0), false}},
      {"poly_recip", {polynomial({0.0, 1.0}), reciprocal(), true}},
  };
  return registry;
}

RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir, bool quiet,
                          std::ostream* log, bool solve_only) {
  std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  try {
    std::filesystem::create_directories(dir);
  } catch (const std::exception& e) {
    return failure(kExitValidation, "output_dir", e.what());
  }

  try {
    switch (config.kind) {
      case ExperimentKind::solve_and_conserve:
        return run_solve(config, dir, quiet, log, solve_only);
      case ExperimentKind::transfer_check:
        return run_transfer(config, dir, quiet, log);
      case ExperimentKind::matrix_dump:
        return run_matrix_dump(config, dir, quiet, log);
    }
    return failure(kExitValidation, "bad_kind", "unhandled experiment kind");
  } catch (const std::exception& e) {
    return failure(kExitValidation, "invalid_argument", e.what());
  }
}

}  // namespace fracvar
