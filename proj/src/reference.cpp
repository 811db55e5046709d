#include "fracvar/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "fracvar/noether.hpp"

namespace fracvar::reference {

double gl_coefficient_closed_form(double alpha, int r) {
  if (r < 0) throw std::invalid_argument("gl_coefficient_closed_form: r >= 0 required");
  if (r == 0) return 1.0;
  if (alpha == 1.0) return r == 1 ? -1.0 : 0.0;  // Gamma(r - 1) pole; binomial terminates
  return -alpha * std::exp(std::lgamma(r - alpha) - std::lgamma(1.0 - alpha) -
                           std::lgamma(r + 1.0));
}

namespace {

std::vector<double> closed_form_coefficients(double alpha, int max_r) {
  std::vector<double> c(static_cast<size_t>(max_r) + 1);
  for (int r = 0; r <= max_r; ++r) c[r] = gl_coefficient_closed_form(alpha, r);
  return c;
}

}  // namespace

SampledSignal delta_minus(const Trajectory& q, double alpha) {
  const int n = q.grid.n_steps;
  const int d = q.dim;
  const std::vector<double> c = closed_form_coefficients(alpha, n);
  const double scale = std::pow(q.grid.h(), -alpha);
  SampledSignal out(q.grid, d, 1, n);
  for (int k = 1; k <= n; ++k)
    for (int comp = 0; comp < d; ++comp) {
      double acc = 0.0;
      for (int r = 0; r <= k; ++r) acc += c[r] * q.at(k - r, comp);
      out.at(k, comp) = scale * acc;
    }
  return out;
}

SampledSignal delta_plus(const Trajectory& q, double alpha) {
  const int n = q.grid.n_steps;
  const int d = q.dim;
  const std::vector<double> c = closed_form_coefficients(alpha, n);
  const double scale = std::pow(q.grid.h(), -alpha);
  SampledSignal out(q.grid, d, 0, n - 1);
  for (int k = 0; k <= n - 1; ++k)
    for (int comp = 0; comp < d; ++comp) {
      double acc = 0.0;
      for (int r = 0; r <= n - k; ++r) acc += c[r] * q.at(k + r, comp);
      out.at(k, comp) = scale * acc;
    }
  return out;
}

ELResidual el_residual(const Lagrangian& lagrangian, const Trajectory& q, double alpha) {
  const int n = q.grid.n_steps;
  const int d = q.dim;
  const std::vector<double> c = closed_form_coefficients(alpha, n);
  const double scale = std::pow(q.grid.h(), -alpha);

  // Momentum samples from scratch, one full backward sum per node.
  std::vector<std::vector<double>> momentum(static_cast<size_t>(n) + 1);
  for (int j = 1; j <= n; ++j) {
    std::vector<double> rate(d, 0.0);
    for (int comp = 0; comp < d; ++comp) {
      double acc = 0.0;
      for (int r = 0; r <= j; ++r) acc += c[r] * q.at(j - r, comp);
      rate[comp] = scale * acc;
    }
    momentum[j].assign(d, 0.0);
    lagrangian.grad_v(q.node(j), rate, q.grid.node(j), momentum[j]);
  }

  ELResidual res{q.grid, d, std::vector<double>(static_cast<size_t>(n - 1) * d, 0.0)};
  for (int k = 1; k <= n - 1; ++k) {
    std::vector<double> rate(d, 0.0);
    for (int comp = 0; comp < d; ++comp) {
      double acc = 0.0;
      for (int r = 0; r <= k; ++r) acc += c[r] * q.at(k - r, comp);
      rate[comp] = scale * acc;
    }
    std::vector<double> gx(d, 0.0);
    lagrangian.grad_x(q.node(k), rate, q.grid.node(k), gx);
    for (int comp = 0; comp < d; ++comp) {
      double forward = 0.0;
      for (int r = 0; r <= n - k; ++r) forward += c[r] * momentum[k + r][comp];
      res.values[static_cast<size_t>(k - 1) * d + comp] = gx[comp] + scale * forward;
    }
  }
  return res;
}

namespace {

long double pair_dot(const SampledSignal& f, int j, const SampledSignal& g, int k) {
  long double acc = 0.0L;
  for (int c = 0; c < f.dim; ++c)
    acc += static_cast<long double>(f.at(j, c)) * g.at(k, c);
  return acc;
}

}  // namespace

std::vector<double> conserved_quantity_streaming(const SampledSignal& f, const SampledSignal& g,
                                                 double alpha) {
  const int n = f.grid.n_steps;
  const std::vector<double> c = closed_form_coefficients(alpha, n);

  std::vector<long double> acc(static_cast<size_t>(n) + 1, 0.0L);
  for (int i = 0; i <= n; ++i) {
    const long double u1 = i + 1 <= n ? pair_dot(f, i, g, i + 1) : 0.0L;
    acc[i] += static_cast<long double>(c[1]) * -u1;
  }

  for (int r = 2; r <= n - 1; ++r) {
    if (c[r] == 0.0) continue;
    const long double head = pair_dot(f, 0, g, r);
    // Sliding window sum_{j = max(1, i-r+1)}^{min(i, N-r)} u_r[j] as i walks up.
    long double window = pair_dot(f, 1, g, 1 + r);
    long double row_value = 0.0L;
    for (int i = 1; i <= n - 1; ++i) {
      row_value = (r <= i ? head : 0.0L) - window;
      acc[i] += static_cast<long double>(c[r]) * row_value;
      const int entering = i + 1;
      if (entering <= n - r) window += pair_dot(f, entering, g, entering + r);
      const int leaving = entering - r;
      if (leaving >= 1) window -= pair_dot(f, leaving, g, leaving + r);
    }
    acc[n] += static_cast<long double>(c[r]) * row_value;  // row N duplicates row N-1
  }

  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out[i] = static_cast<double>(acc[i]);
  return out;
}

std::vector<double> conserved_quantity_matrices(const SampledSignal& f, const SampledSignal& g,
                                                double alpha) {
  const int n = f.grid.n_steps;
  const std::vector<double> c = closed_form_coefficients(alpha, n);

  std::vector<long double> acc(static_cast<size_t>(n) + 1, 0.0L);
  std::vector<long double> u(static_cast<size_t>(n) + 1, 0.0L);
  for (int r = 1; r <= n - 1; ++r) {
    if (c[r] == 0.0) continue;
    const ShiftMatrix a = build_shift_matrix(r, n);
    for (int j = 0; j <= n; ++j)
      u[j] = j + r <= n && j + r >= g.k_lo ? pair_dot(f, j, g, j + r) : 0.0L;
    for (int i = 0; i <= n; ++i) {
      long double row = 0.0L;
      for (int j = 0; j <= n; ++j)
        if (const int e = a.at(i, j); e != 0) row += e * u[j];
      acc[i] += static_cast<long double>(c[r]) * row;
    }
  }

  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out[i] = static_cast<double>(acc[i]);
  return out;
}

}  // namespace fracvar::reference
