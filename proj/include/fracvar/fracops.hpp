#pragma once

#include <stdexcept>
#include <vector>

#include "fracvar/grid.hpp"

namespace fracvar {

/// Fractional order restricted to (0, 1]. Order 1 recovers the classical
/// first-order calculus throughout the library.
struct FracOrder {
  double value;

  explicit FracOrder(double v) : value(v) {
    if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("FracOrder: alpha in (0, 1] required");
  }
};

/// Grunwald-Letnikov weights c[0..R] for order alpha:
///   c[0] = 1,  c[r] = (-alpha)(1 - alpha)...(r - 1 - alpha) / r!
/// computed with the stable multiplicative recurrence c[r] = c[r-1] (r - 1 - alpha) / r.
///
/// For 0 < alpha < 1 every c[r] with r >= 1 is negative, |c[r]| is
/// non-increasing, and the partial sums decrease to 0 from above. For alpha = 1
/// the weights reduce to (1, -1, 0, 0, ...).
struct GLCoefficients {
  FracOrder alpha;
  std::vector<double> c;

  double operator[](int r) const { return c[r]; }
  int max_index() const { return static_cast<int>(c.size()) - 1; }
};

GLCoefficients gl_coefficients(FracOrder alpha, int max_r);

enum class DeltaSide { minus, plus };

/// Backward Grunwald-Letnikov difference of order alpha on a windowed signal:
///   (delta_minus s)_k = h^{-alpha} sum_{r=0}^{k - k_lo} c[r] s_{k-r},   k = k_lo+1 .. k_hi.
/// With k_lo = 0 this is the operator mapping (R^d)^{N+1} -> (R^d)^N used by the
/// discrete variational principle; at alpha = 1 it is the implicit Euler difference.
SampledSignal delta_minus(const SampledSignal& s, FracOrder alpha);

/// Forward counterpart:
///   (delta_plus s)_k = h^{-alpha} sum_{r=0}^{k_hi - k} c[r] s_{k+r},   k = k_lo .. k_hi-1.
/// At alpha = 1 it is the negated explicit Euler difference (s_k - s_{k+1}) / h.
SampledSignal delta_plus(const SampledSignal& s, FracOrder alpha);

SampledSignal delta_minus(const Trajectory& q, FracOrder alpha);
SampledSignal delta_plus(const Trajectory& q, FracOrder alpha);

/// Side-dispatching entry point over a full trajectory (window 0..N).
SampledSignal delta(DeltaSide side, const Trajectory& q, FracOrder alpha);

SampledSignal to_signal(const Trajectory& q);

}  // namespace fracvar
