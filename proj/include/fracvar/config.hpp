#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracvar/dynamics.hpp"

namespace fracvar {

enum class ExperimentKind { solve_and_conserve, transfer_check, matrix_dump };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::solve_and_conserve;

  double a = 0.0;
  double b = 1.0;
  int n_steps = 0;
  double alpha = 0.5;
  int dim = 1;

  std::string lagrangian = "quadratic";
  std::string symmetry = "rotation2d";
  std::vector<double> symmetry_direction;  // translation(...) only
  std::vector<double> q0, qn;
  SolverOptions solver;
  double constancy_tol = 1e-6;

  int shift_order = 1;  // matrix_dump: r

  std::string pair_name = "poly_exp";  // transfer_check
  int truncation = 4;                  // P
  int p_max = 4;
  int t_points = 7;
  int quad_panels = 2048;
  double transfer_tol = 1e-5;

  std::string output_path;
};

struct ConfigIssue {
  int line = 0;  // 0 when the issue is not tied to a single line
  std::string message;
};

struct ParseOutcome {
  std::optional<ExperimentConfig> config;  // engaged only when issues is empty
  std::vector<ConfigIssue> issues;
};

/// Parses the flat `key = value` format: one pair per line, `#` starts a
/// comment, vectors are comma-separated. Unknown and duplicate keys are
/// rejected. Validation does not stop at the first problem; every violated
/// constraint is reported.
ParseOutcome parse_config(std::string_view text);

std::string to_string(ExperimentKind kind);

}  // namespace fracvar
