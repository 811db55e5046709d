#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracvar/fracops.hpp"

namespace fracvar {

inline constexpr int kDefaultQuadPanels = 2048;

/// R^d-valued function of time, evaluated by writing dim components into out.
struct TimeFunction {
  int dim = 1;
  std::function<void(double t, std::span<double> out)> eval;

  static TimeFunction scalar(std::function<double(double)> f);
};

/// Function bundled with its first derivative. The fractional derivative below
/// needs f' explicitly: differentiating the singular integral numerically is
/// unstable, so the derivative is taken under the integral sign instead.
struct C1Function {
  TimeFunction value;
  TimeFunction deriv;

  /// Fallback for callers without an analytic derivative: central difference
  /// with the given relative step.
  static C1Function from_value(TimeFunction f, double step = 1e-6);
};

enum class RlSide { left, right };

/// Riemann-Liouville fractional integral of order beta > 0 over [a, b]:
///   left:  (1/Gamma(beta)) int_a^t (t - y)^{beta-1} f(y) dy,   t in (a, b]
///   right: (1/Gamma(beta)) int_t^b (y - t)^{beta-1} f(y) dy,   t in [a, b)
/// Product-trapezoid quadrature: f is replaced by its piecewise-linear
/// interpolant on `panels` equal panels between t and the endpoint, and the
/// kernel moment on each panel is integrated exactly. The rule is exact for
/// affine f and second-order accurate for smooth f, including the kernel
/// singularity at y = t.
std::vector<double> rl_integral(RlSide side, const TimeFunction& f, double beta, double a, double b,
                                double t, int panels = kDefaultQuadPanels);

double rl_integral_scalar(RlSide side, const std::function<double(double)>& f, double beta,
                          double a, double b, double t, int panels = kDefaultQuadPanels);

/// Riemann-Liouville fractional derivative of order alpha in (0, 1], written in
/// integrated-by-parts form:
///   left:  D^a_- f(t) = f(a) (t-a)^{-a} / Gamma(1-a) + I^{1-a}_-(f')(t)
///   right: D^a_+ f(t) = f(b) (b-t)^{-a} / Gamma(1-a) - I^{1-a}_+(f')(t)
/// At alpha = 1 this degenerates to f'(t) on the left and -f'(t) on the right.
/// Domain: t in (a, b] for the left side, t in [a, b) for the right side; the
/// excluded endpoint is where the boundary factor is singular.
std::vector<double> rl_derivative(RlSide side, const C1Function& f, FracOrder alpha, double a,
                                  double b, double t, int panels = kDefaultQuadPanels);

}  // namespace fracvar
