#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>

#include "fracvar/config.hpp"
#include "fracvar/model.hpp"
#include "fracvar/transfer.hpp"

namespace fracvar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSolverFailure = 2;
inline constexpr int kExitConstancyFailure = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  /// Machine-readable single line for stderr on failure, empty on success:
  /// `error exit=<code> reason=<slug> detail="..."`.
  std::string error_line;
};

/// Named Lagrangians reachable from config files. Factories take the state
/// dimension.
const std::map<std::string, std::function<Lagrangian(int dim)>>& lagrangian_registry();

/// Named smooth-function pairs for transfer checks.
struct TransferPair {
  SmoothFunction f;
  SmoothFunction g;
  bool needs_positive_a = false;
};
const std::map<std::string, TransferPair>& transfer_pair_registry();

/// Executes a validated config. Artifacts land in out_dir:
///   solve_and_conserve -> trajectory.csv (+ conservation.csv unless solve_only)
///   transfer_check     -> leibniz.csv, truncation.csv, condition_c.csv
///   matrix_dump        -> A_r<r>_N<N>.csv
/// Exit codes: 0 ok, 1 validation, 2 solver failure, 3 constancy failure.
/// solve_only stops a solve_and_conserve run after the trajectory is written.
RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                          bool quiet = false, std::ostream* log = nullptr,
                          bool solve_only = false);

}  // namespace fracvar
