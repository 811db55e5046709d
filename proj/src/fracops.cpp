#include "fracvar/fracops.hpp"

#include <cmath>

namespace fracvar {

GLCoefficients gl_coefficients(FracOrder alpha, int max_r) {
  if (max_r < 0) throw std::invalid_argument("gl_coefficients: max_r >= 0 required");
  std::vector<double> c(static_cast<size_t>(max_r) + 1);
  c[0] = 1.0;
  for (int r = 1; r <= max_r; ++r) c[r] = c[r - 1] * ((r - 1 - alpha.value) / r);
  return {alpha, std::move(c)};
}

namespace {

void require_window(const SampledSignal& s) {
  if (s.k_hi() <= s.k_lo)
    throw std::invalid_argument("delta: at least two samples required");
}

}  // namespace

SampledSignal delta_minus(const SampledSignal& s, FracOrder alpha) {
  require_window(s);
  const int lo = s.k_lo, hi = s.k_hi(), d = s.dim;
  const GLCoefficients coef = gl_coefficients(alpha, hi - lo);
  const double scale = 1.0 / std::pow(s.grid.h(), alpha.value);
  SampledSignal out(s.grid, d, lo + 1, hi);
#pragma omp parallel for schedule(static, 1) if (hi - lo > 32)
  for (int k = lo + 1; k <= hi; ++k) {
    for (int c = 0; c < d; ++c) {
      long double acc = 0.0L;
      for (int r = 0; r <= k - lo; ++r) acc += static_cast<long double>(coef[r]) * s.at(k - r, c);
      out.at(k, c) = static_cast<double>(scale * acc);
    }
  }
  return out;
}

SampledSignal delta_plus(const SampledSignal& s, FracOrder alpha) {
  require_window(s);
  const int lo = s.k_lo, hi = s.k_hi(), d = s.dim;
  const GLCoefficients coef = gl_coefficients(alpha, hi - lo);
  const double scale = 1.0 / std::pow(s.grid.h(), alpha.value);
  SampledSignal out(s.grid, d, lo, hi - 1);
#pragma omp parallel for schedule(static, 1) if (hi - lo > 32)
  for (int k = lo; k <= hi - 1; ++k) {
    for (int c = 0; c < d; ++c) {
      long double acc = 0.0L;
      for (int r = 0; r <= hi - k; ++r) acc += static_cast<long double>(coef[r]) * s.at(k + r, c);
      out.at(k, c) = static_cast<double>(scale * acc);
    }
  }
  return out;
}

SampledSignal to_signal(const Trajectory& q) {
  SampledSignal s(q.grid, q.dim, 0, q.grid.n_steps);
  s.values = q.values;
  return s;
}

SampledSignal delta_minus(const Trajectory& q, FracOrder alpha) {
  return delta_minus(to_signal(q), alpha);
}

SampledSignal delta_plus(const Trajectory& q, FracOrder alpha) {
  return delta_plus(to_signal(q), alpha);
}

SampledSignal delta(DeltaSide side, const Trajectory& q, FracOrder alpha) {
  return side == DeltaSide::minus ? delta_minus(q, alpha) : delta_plus(q, alpha);
}

}  // namespace fracvar
