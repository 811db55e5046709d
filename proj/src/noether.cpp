#include "fracvar/noether.hpp"

#include <cmath>
#include <stdexcept>

namespace fracvar {

ShiftMatrix build_shift_matrix(int r, int n_steps) {
  if (n_steps < 2) throw std::invalid_argument("build_shift_matrix: N >= 2 required");
  if (r < 1 || r > n_steps - 1)
    throw std::out_of_range("build_shift_matrix: r in [1, N-1] required");

  const int size = n_steps + 1;
  ShiftMatrix m{r, n_steps, std::vector<int8_t>(static_cast<size_t>(size) * size, 0)};
  auto entry = [&](int i, int j) -> int8_t& {
    return m.entries[static_cast<size_t>(i) * size + j];
  };

  if (r == 1) {
    for (int i = 0; i < size; ++i) entry(i, i) = -1;
    return m;
  }

  for (int i = 1; i <= n_steps - 1; ++i) {
    if (r <= i) entry(i, 0) = 1;
    for (int j = 1; j <= n_steps - r; ++j)
      if (0 <= i - j && i - j <= r - 1) entry(i, j) = -1;
  }
  for (int j = 0; j < size; ++j) entry(n_steps, j) = entry(n_steps - 1, j);
  return m;
}

SampledSignal shift(const SampledSignal& s, int r) {
  if (r < 0) throw std::invalid_argument("shift: r >= 0 required");
  SampledSignal out(s.grid, s.dim, s.k_lo, s.k_hi());
  for (int k = s.k_lo; k <= s.k_hi(); ++k) {
    if (k + r <= s.k_hi())
      for (int c = 0; c < s.dim; ++c) out.at(k, c) = s.at(k + r, c);
  }
  return out;
}

namespace {

struct Windows {
  int n = 0;
  int d = 0;
};

Windows require_conservation_inputs(const SampledSignal& f, const SampledSignal& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("conserved_quantity: grids differ");
  if (f.dim != g.dim) throw std::invalid_argument("conserved_quantity: dimensions differ");
  const int n = f.grid.n_steps;
  if (f.k_lo != 0 || f.k_hi() != n)
    throw std::invalid_argument("conserved_quantity: F must cover nodes 0..N");
  if (g.k_hi() != n || g.k_lo > 1)
    throw std::invalid_argument("conserved_quantity: G must cover nodes 1..N");
  return {n, f.dim};
}

long double dot(const SampledSignal& f, int j, const SampledSignal& g, int k) {
  const double* fp = f.node(j).data();
  const double* gp = g.node(k).data();
  long double acc = 0.0L;
  for (int c = 0; c < f.dim; ++c) acc += static_cast<long double>(fp[c]) * gp[c];
  return acc;
}

}  // namespace

SampledSignal shifted_dot(const SampledSignal& f, const SampledSignal& g, int r) {
  if (r < 0) throw std::invalid_argument("shifted_dot: r >= 0 required");
  if (!(f.grid == g.grid) || f.dim != g.dim)
    throw std::invalid_argument("shifted_dot: incompatible signals");
  SampledSignal out(f.grid, 1, f.k_lo, f.k_hi());
  for (int j = f.k_lo; j <= f.k_hi(); ++j) {
    const int k = j + r;
    out.at(j, 0) =
        (k >= g.k_lo && k <= g.k_hi()) ? static_cast<double>(dot(f, j, g, k)) : 0.0;
  }
  return out;
}

std::vector<double> conserved_quantity(const SampledSignal& f, const SampledSignal& g,
                                       FracOrder alpha) {
  const auto [n, d] = require_conservation_inputs(f, g);
  const GLCoefficients coef = gl_coefficients(alpha, n);

  // u_r[j] = F_j . G_{j+r}. Row i of A_r (2 <= r <= N-1, 1 <= i <= N-1) applied
  // to u_r is  [r <= i] u_r[0] - sum_{j in [max(1, i-r+1), min(i, N-r)]} u_r[j];
  // the window sum comes from prefix tables prefix[r][m] = sum_{j<=m} u_r[j].
  std::vector<long double> u1(static_cast<size_t>(n), 0.0L);
#pragma omp parallel for schedule(static) if (n > 64)
  for (int i = 0; i <= n - 1; ++i) u1[i] = dot(f, i, g, i + 1);

  std::vector<size_t> offset(static_cast<size_t>(n), 0);  // indexed by r, rows 2..N-1
  size_t total = 0;
  for (int r = 2; r <= n - 1; ++r) {
    offset[r] = total;
    total += static_cast<size_t>(n - r + 1);  // m = 0..N-r
  }
  std::vector<long double> prefix(total, 0.0L);
  std::vector<long double> head(static_cast<size_t>(n), 0.0L);  // u_r[0] = F_0 . G_r
#pragma omp parallel for schedule(dynamic, 8) if (n > 64)
  for (int r = 2; r <= n - 1; ++r) {
    head[r] = dot(f, 0, g, r);
    long double run = 0.0L;
    prefix[offset[r]] = 0.0L;
    for (int j = 1; j <= n - r; ++j) {
      run += dot(f, j, g, j + r);
      prefix[offset[r] + j] = run;
    }
  }

  const double c1 = coef[1];  // -alpha
  std::vector<double> out(static_cast<size_t>(n) + 1, 0.0);
  out[0] = static_cast<double>(-static_cast<long double>(c1) * u1[0]);
#pragma omp parallel for schedule(static) if (n > 64)
  for (int i = 1; i <= n; ++i) {
    // A_1 = -Id is not row-duplicated: its contribution at i = N uses the
    // zero-padded u_1[N] = 0, not u_1[N-1].
    long double acc = i <= n - 1 ? -static_cast<long double>(c1) * u1[i] : 0.0L;
    const int row = i == n ? n - 1 : i;
    for (int r = 2; r <= n - 1; ++r) {
      const double cr = coef[r];
      if (cr == 0.0) break;  // order 1: every later weight is exactly zero
      long double term = 0.0L;
      if (r <= row) term += head[r];
      const int j_lo = std::max(1, row - r + 1);
      const int j_hi = std::min(row, n - r);
      if (j_lo <= j_hi)
        term -= prefix[offset[r] + j_hi] - prefix[offset[r] + j_lo - 1];
      acc += static_cast<long double>(cr) * term;
    }
    out[i] = static_cast<double>(acc);
  }
  return out;
}

std::vector<double> conserved_quantity_direct(const SampledSignal& f, const SampledSignal& g,
                                              FracOrder alpha, double h) {
  const auto [n, d] = require_conservation_inputs(f, g);
  if (!(h > 0.0)) throw std::invalid_argument("conserved_quantity_direct: h > 0 required");
  const GLCoefficients coef = gl_coefficients(alpha, n);

  std::vector<long double> cumulative(static_cast<size_t>(n) + 1, 0.0L);
  for (int j = 1; j <= n - 1; ++j) {
    long double left = 0.0L;   // (sum_{r=2}^{j} c[r] F_{j-r}) . G_j
    for (int r = 2; r <= j; ++r) left += static_cast<long double>(coef[r]) * dot(f, j - r, g, j);
    long double right = 0.0L;  // F_j . (sum_{r=2}^{N-j} c[r] G_{j+r})
    for (int r = 2; r <= n - j; ++r)
      right += static_cast<long double>(coef[r]) * dot(f, j, g, j + r);
    const long double j_term = (left - right) / h;
    cumulative[j] = cumulative[j - 1] + h * j_term;
  }
  cumulative[n] = cumulative[n - 1];

  const double c1 = coef[1];
  std::vector<double> out(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    const long double u1 = i <= n - 1 ? dot(f, i, g, i + 1) : 0.0L;
    out[i] = static_cast<double>(-static_cast<long double>(c1) * u1 + cumulative[i]);
  }
  return out;
}

NoetherInputs noether_inputs(const Lagrangian& lagrangian, const SymmetryGroup& group,
                             const Trajectory& q, FracOrder alpha) {
  if (group.dim != q.dim)
    throw std::invalid_argument("noether_inputs: group dimension does not match trajectory");
  const int n = q.grid.n_steps;
  const SampledSignal rate = delta_minus(q, alpha);

  NoetherInputs inputs{SampledSignal(q.grid, q.dim, 0, n), SampledSignal(q.grid, q.dim, 1, n)};
  for (int k = 0; k <= n; ++k) group.generator(q.node(k), inputs.generator_samples.node(k));
  for (int k = 1; k <= n; ++k)
    lagrangian.grad_v(q.node(k), rate.node(k), q.grid.node(k), inputs.momentum_samples.node(k));
  return inputs;
}

ConservationReport constancy_report(std::vector<double> samples) {
  if (samples.size() < 3)
    throw std::invalid_argument("constancy_report: needs samples for nodes 0..N with N >= 2");
  const int n = static_cast<int>(samples.size()) - 1;

  ConservationReport report;
  report.c_ref = samples[1];
  for (int k = 1; k <= n - 1; ++k)
    report.max_abs_dev = std::max(report.max_abs_dev, std::fabs(samples[k] - report.c_ref));
  report.rel_spread = report.max_abs_dev / std::max(std::fabs(report.c_ref), 1e-300);
  report.first_node_dev = std::fabs(samples[0] - report.c_ref);
  report.final_node_dev = std::fabs(samples[n] - report.c_ref);
  report.samples = std::move(samples);
  return report;
}

}  // namespace fracvar
