#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracvar/fracops.hpp"
#include "fracvar/grid.hpp"
#include "fracvar/model.hpp"

namespace fracvar {

/// Discrete action h * sum_{k=1}^{N} L(Q_k, (delta_minus Q)_k, t_k).
double discrete_action(const Lagrangian& lagrangian, const Trajectory& q, FracOrder alpha);

/// Stationarity residual of the discrete action at interior nodes k = 1..N-1:
///   R_k = dL/dx(Q_k, (delta_minus Q)_k, t_k) + (delta_plus G)_k,
/// where G_j = dL/dv(Q_j, (delta_minus Q)_j, t_j) for j = 1..N and delta_plus
/// runs over that window. R equals the gradient of the action with respect to
/// the interior nodes divided by h; a trajectory solves the discrete
/// Euler-Lagrange equations iff R vanishes.
struct ELResidual {
  Grid grid;
  int dim = 1;
  std::vector<double> values;  // (N - 1) * dim, node k = 1..N-1

  std::span<const double> node(int k) const {
    return {values.data() + static_cast<size_t>(k - 1) * dim, static_cast<size_t>(dim)};
  }
  double max_abs() const;
};

ELResidual el_residual(const Lagrangian& lagrangian, const Trajectory& q, FracOrder alpha);

enum class JacobianMode { finite_difference, user };

struct SolverOptions {
  int max_iters = 50;
  double residual_tol = 1e-10;
  bool linesearch = true;
  JacobianMode jacobian = JacobianMode::finite_difference;
  /// Only consulted when jacobian == user: returns the (n x n) Jacobian of the
  /// packed interior residual, column-major, n = (N - 1) * dim.
  std::function<std::vector<double>(const Trajectory&)> user_jacobian;
};

enum class SolveStatus { converged, non_convergence, singular_jacobian };

struct SolveResult {
  Trajectory trajectory;
  SolveStatus status = SolveStatus::non_convergence;
  int iterations = 0;
  double residual_norm = 0.0;  // inf-norm of the interior residual at `trajectory`

  bool ok() const { return status == SolveStatus::converged; }
};

/// Solves the discrete Euler-Lagrange boundary-value problem with both
/// endpoints fixed: damped Newton on the (N - 1) * dim interior unknowns with a
/// dense LU linear solve. The default initial guess interpolates linearly
/// between Q0 and QN; a caller-supplied init must match the grid, dimension and
/// endpoints. max_iters = 0 only evaluates the initial residual. On
/// non-convergence the best iterate seen is returned together with
/// diagnostics; a singular or non-finite Jacobian is reported as
/// singular_jacobian.
SolveResult solve_bvp(const Lagrangian& lagrangian, FracOrder alpha, const Grid& grid,
                      std::span<const double> q0, std::span<const double> qn,
                      const SolverOptions& options = {}, const Trajectory* init = nullptr);

}  // namespace fracvar
