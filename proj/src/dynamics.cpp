#include "fracvar/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracvar {

double ELResidual::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

namespace {

// Shared assembly core. coef must hold weights up to index N.
// W_k = (delta_minus Q)_k for k = 1..N, G_k = dL/dv at node k, and the residual
// R_k = dL/dx(Q_k, W_k, t_k) + h^{-alpha} sum_{r=0}^{N-k} c[r] G_{k+r} lives at
// k = 1..N-1. Scratch buffers W and G are (N + 1) * d with row 0 unused.
void el_residual_into(const Lagrangian& lag, const Trajectory& q, const GLCoefficients& coef,
                      double inv_h_alpha, std::vector<double>& w_buf, std::vector<double>& g_buf,
                      std::span<double> out) {
  const int n = q.grid.n_steps;
  const int d = q.dim;
  w_buf.assign(static_cast<size_t>(n + 1) * d, 0.0);
  g_buf.assign(static_cast<size_t>(n + 1) * d, 0.0);

#pragma omp parallel for schedule(static, 1) if (n > 32)
  for (int k = 1; k <= n; ++k) {
    for (int c = 0; c < d; ++c) {
      long double acc = 0.0L;
      for (int r = 0; r <= k; ++r)
        acc += static_cast<long double>(coef[r]) * q.at(k - r, c);
      w_buf[static_cast<size_t>(k) * d + c] = static_cast<double>(inv_h_alpha * acc);
    }
  }

#pragma omp parallel for schedule(static) if (n > 32)
  for (int k = 1; k <= n; ++k) {
    lag.grad_v(q.node(k), std::span<const double>(w_buf.data() + static_cast<size_t>(k) * d, d),
               q.grid.node(k), std::span<double>(g_buf.data() + static_cast<size_t>(k) * d, d));
  }

#pragma omp parallel for schedule(static, 1) if (n > 32)
  for (int k = 1; k <= n - 1; ++k) {
    double* row = out.data() + static_cast<size_t>(k - 1) * d;
    lag.grad_x(q.node(k), std::span<const double>(w_buf.data() + static_cast<size_t>(k) * d, d),
               q.grid.node(k), std::span<double>(row, d));
    for (int c = 0; c < d; ++c) {
      long double acc = 0.0L;
      for (int r = 0; r <= n - k; ++r)
        acc += static_cast<long double>(coef[r]) * g_buf[static_cast<size_t>(k + r) * d + c];
      row[c] += static_cast<double>(inv_h_alpha * acc);
    }
  }
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

double discrete_action(const Lagrangian& lagrangian, const Trajectory& q, FracOrder alpha) {
  q.require_finite();
  const int n = q.grid.n_steps;
  const SampledSignal rate = delta_minus(q, alpha);
  long double acc = 0.0L;
  for (int k = 1; k <= n; ++k)
    acc += static_cast<long double>(lagrangian.value(q.node(k), rate.node(k), q.grid.node(k)));
  return static_cast<double>(q.grid.h() * acc);
}

ELResidual el_residual(const Lagrangian& lagrangian, const Trajectory& q, FracOrder alpha) {
  q.require_finite();
  const int n = q.grid.n_steps;
  const GLCoefficients coef = gl_coefficients(alpha, n);
  const double inv_h_alpha = 1.0 / std::pow(q.grid.h(), alpha.value);
  ELResidual res{q.grid, q.dim, std::vector<double>(static_cast<size_t>(n - 1) * q.dim, 0.0)};
  std::vector<double> w_buf, g_buf;
  el_residual_into(lagrangian, q, coef, inv_h_alpha, w_buf, g_buf, res.values);
  return res;
}

SolveResult solve_bvp(const Lagrangian& lagrangian, FracOrder alpha, const Grid& grid,
                      std::span<const double> q0, std::span<const double> qn,
                      const SolverOptions& options, const Trajectory* init) {
  const int n = grid.n_steps;
  if (q0.size() != qn.size() || q0.empty())
    throw std::invalid_argument("solve_bvp: endpoint dimensions must match and be nonzero");
  const int d = static_cast<int>(q0.size());
  if (options.max_iters < 0) throw std::invalid_argument("solve_bvp: max_iters >= 0 required");
  if (!(options.residual_tol > 0.0))
    throw std::invalid_argument("solve_bvp: residual_tol > 0 required");
  if (options.jacobian == JacobianMode::user && !options.user_jacobian)
    throw std::invalid_argument("solve_bvp: user jacobian selected but no callback supplied");

  Trajectory x(grid, d);
  if (init) {
    if (!(init->grid == grid) || init->dim != d)
      throw std::invalid_argument("solve_bvp: init does not match grid or dimension");
    init->require_finite();
    for (int c = 0; c < d; ++c)
      if (init->at(0, c) != q0[c] || init->at(n, c) != qn[c])
        throw std::invalid_argument("solve_bvp: init must respect the fixed endpoints");
    x = *init;
  } else {
    for (int k = 0; k <= n; ++k) {
      const double w = static_cast<double>(k) / n;
      for (int c = 0; c < d; ++c) x.at(k, c) = (1.0 - w) * q0[c] + w * qn[c];
    }
  }

  const int unknowns = (n - 1) * d;
  const GLCoefficients coef = gl_coefficients(alpha, n);
  const double inv_h_alpha = 1.0 / std::pow(grid.h(), alpha.value);

  std::vector<double> w_buf, g_buf;
  auto eval_residual = [&](const Trajectory& traj, std::vector<double>& out) {
    out.assign(static_cast<size_t>(unknowns), 0.0);
    el_residual_into(lagrangian, traj, coef, inv_h_alpha, w_buf, g_buf, out);
  };

  std::vector<double> residual;
  eval_residual(x, residual);
  double norm = inf_norm(residual);

  SolveResult best;
  best.trajectory = x;
  best.iterations = 0;
  best.residual_norm = norm;
  best.status = SolveStatus::non_convergence;
  if (norm <= options.residual_tol) {
    best.status = SolveStatus::converged;
    return best;
  }

  // Affine-gradient Lagrangians have an affine residual: unit-step column
  // differences reproduce the Jacobian exactly and it never changes, so the
  // factorisation is built once and reused.
  const bool affine = lagrangian.structure == Lagrangian::Structure::quadratic &&
                      options.jacobian == JacobianMode::finite_difference;

  Eigen::MatrixXd jac(unknowns, unknowns);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  bool factorised = false;

  auto assemble_jacobian = [&](const Trajectory& at, const std::vector<double>& base) -> bool {
    if (options.jacobian == JacobianMode::user) {
      const std::vector<double> cols = options.user_jacobian(at);
      if (cols.size() != static_cast<size_t>(unknowns) * unknowns)
        throw std::invalid_argument("solve_bvp: user jacobian has wrong size");
      jac = Eigen::Map<const Eigen::MatrixXd>(cols.data(), unknowns, unknowns);
      return true;
    }
    const double fd_scale = affine ? 1.0 : std::sqrt(std::numeric_limits<double>::epsilon());
#pragma omp parallel for schedule(dynamic, 4)
    for (int col = 0; col < unknowns; ++col) {
      const int k = col / d + 1;
      const int c = col % d;
      Trajectory probe = at;
      const double step = affine ? 1.0 : fd_scale * std::max(1.0, std::fabs(probe.at(k, c)));
      probe.at(k, c) += step;
      std::vector<double> wb, gb, shifted(static_cast<size_t>(unknowns), 0.0);
      el_residual_into(lagrangian, probe, coef, inv_h_alpha, wb, gb, shifted);
      for (int row = 0; row < unknowns; ++row) jac(row, col) = (shifted[row] - base[row]) / step;
    }
    return jac.allFinite();
  };

  const double rcond_floor = std::max(unknowns, 64) * std::numeric_limits<double>::epsilon();
  int iterations = 0;

  for (int iter = 1; iter <= options.max_iters; ++iter) {
    if (!factorised) {
      if (!assemble_jacobian(x, residual)) {
        best.status = SolveStatus::singular_jacobian;
        return best;
      }
      lu.compute(jac);
      if (!(lu.rcond() > rcond_floor)) {
        best.status = SolveStatus::singular_jacobian;
        return best;
      }
      factorised = affine;  // non-affine problems refresh the Jacobian each iteration
    }

    const Eigen::Map<const Eigen::VectorXd> rhs(residual.data(), unknowns);
    const Eigen::VectorXd step = lu.solve(-rhs);
    if (!step.allFinite()) {
      best.status = SolveStatus::singular_jacobian;
      return best;
    }

    Trajectory trial = x;
    std::vector<double> trial_residual;
    double trial_norm = std::numeric_limits<double>::infinity();
    double damping = 1.0;
    bool accepted = false;
    while (damping >= 1.0 / 1024.0) {
      for (int col = 0; col < unknowns; ++col)
        trial.at(col / d + 1, col % d) = x.at(col / d + 1, col % d) + damping * step[col];
      eval_residual(trial, trial_residual);
      trial_norm = inf_norm(trial_residual);
      if (!options.linesearch || trial_norm < norm * (1.0 - 1e-4 * damping) ||
          trial_norm <= options.residual_tol) {
        accepted = true;
        break;
      }
      damping *= 0.5;
    }
    if (!accepted) break;  // stalled: no damping gives descent

    x = std::move(trial);
    residual = std::move(trial_residual);
    norm = trial_norm;
    iterations = iter;

    if (norm < best.residual_norm) {
      best.trajectory = x;
      best.residual_norm = norm;
      best.iterations = iterations;
    }
    if (norm <= options.residual_tol) {
      best.trajectory = x;
      best.residual_norm = norm;
      best.iterations = iterations;
      best.status = SolveStatus::converged;
      return best;
    }
  }

  return best;
}

}  // namespace fracvar
