#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "fracvar/riemann_liouville.hpp"

namespace fracvar {

inline constexpr int kUnlimitedOrder = std::numeric_limits<int>::max();

/// R^d-valued function with derivatives of every order up to max_order;
/// derivative(0, t) is the value itself. Derivatives are supplied analytically
/// by the factories below; repeated numerical differentiation of the singular
/// integrals is exactly what this module is built to avoid.
struct SmoothFunction {
  int dim = 1;
  int max_order = 0;
  std::function<void(int p, double t, std::span<double> out)> derivative;

  void value(double t, std::span<double> out) const { derivative(0, t, out); }
  /// Order-p derivative viewed as a plain function of time.
  TimeFunction order_view(int p) const;
  C1Function c1_view() const;
};

/// sum_i coeffs[i] t^i (scalar).
SmoothFunction polynomial(std::vector<double> coeffs);
/// scale * exp(rate t) (scalar).
SmoothFunction exponential(double rate = 1.0, double scale = 1.0);
/// 1 / t (scalar); only meaningful on intervals with a > 0.
SmoothFunction reciprocal();
/// Componentwise product, derivatives by the Leibniz binomial sum.
SmoothFunction product(SmoothFunction f, SmoothFunction g);
/// Stacks scalar functions into an R^d-valued one.
SmoothFunction stack(std::vector<SmoothFunction> components);

/// I^{r+1-alpha} applied to f on the requested side; r >= 0. Order errors
/// (e.g. r = 0 with alpha = 1) propagate from rl_integral.
std::vector<double> iterated_rl_integral(RlSide side, const SmoothFunction& f, int r,
                                         FracOrder alpha, double a, double b, double t,
                                         int panels = kDefaultQuadPanels);

/// Evenly spaced interior sample points, kept away from both endpoints by one
/// spacing so that the five-point stencils below stay inside the domain.
std::vector<double> interior_grid(double a, double b, int n_points);

/// Value at time t of the order-P partial sum of the two-sided series
///   sum_r [ (-1)^r I^{r+1-alpha}_- f . g^{(r)} + f^{(r)} . I^{r+1-alpha}_+ g ].
/// The time derivative of the full series equals D^alpha_- f . g - f . D^alpha_+ g.
double transfer_series_value(const SmoothFunction& f, const SmoothFunction& g, FracOrder alpha,
                             int truncation, double a, double b, double t,
                             int panels = kDefaultQuadPanels);

struct LeibnizCheckResult {
  double max_residual_minus = 0.0;
  double max_residual_plus = 0.0;
  double max_residual = 0.0;
};

/// Verifies the two exact per-step identities behind the series, at every
/// sampled t:
///   D^alpha_- f . g = (-1)^p I^{p-alpha}_- f . g^{(p)}
///                     + d/dt sum_{r=0}^{p-1} (-1)^r I^{r+1-alpha}_- f . g^{(r)}
///   -f . D^alpha_+ g = -f^{(p)} . I^{p-alpha}_+ g
///                     + d/dt sum_{r=0}^{p-1} f^{(r)} . I^{r+1-alpha}_+ g
/// The bracket's time derivative is taken with a fourth-order five-point
/// central stencil whose step is the sample spacing divided by 32. That step
/// balances stencil truncation against quadrature noise: near the interval
/// ends the bracket behaves like (t - a)^{1-alpha}, so its fifth derivative
/// grows fast and a coarser step would dominate the residual. All other
/// pieces come from quadrature, so the residual measures discretisation error
/// only.
LeibnizCheckResult leibniz_step_check(const SmoothFunction& f, const SmoothFunction& g,
                                      FracOrder alpha, int p, std::span<const double> t_grid,
                                      double a, double b, int panels = kDefaultQuadPanels);

struct TruncationResult {
  int truncation = 0;
  std::vector<double> t_grid;
  std::vector<double> samples;
  double tail_estimate = 0.0;  // max_t |I^{P+1-a}_- f . g^{(P+1)}| + |f^{(P+1)} . I^{P+1-a}_+ g|
  bool tail_available = false;
};

TruncationResult truncated_transfer_sum(const SmoothFunction& f, const SmoothFunction& g,
                                        FracOrder alpha, int truncation,
                                        std::span<const double> t_grid, double a, double b,
                                        int panels = kDefaultQuadPanels);

/// Sampled sufficient-condition bounds for uniform convergence of the series.
/// Per order p:
///   factorial_bound_f = max_t (b - t)^{p-1} / (p-1)! * |f^{(p)}(t)|   (criterion 1)
///   factorial_bound_g = max_t (t - a)^{p-1} / (p-1)! * |g^{(p)}(t)|
///   sup_f, sup_g      = max_t |f^{(p)}(t)|, |g^{(p)}(t)|              (criterion 2)
///   cross_minus/plus  = max_t |I^{p-alpha}_- f . g^{(p)}|, |f^{(p)} . I^{p-alpha}_+ g|
/// plus qualitative trend flags. Diagnostics over a finite sample only; nothing
/// here certifies convergence.
struct ConditionCRow {
  int p = 0;
  double factorial_bound_f = 0.0;
  double factorial_bound_g = 0.0;
  double sup_f = 0.0;
  double sup_g = 0.0;
  double cross_minus = 0.0;
  double cross_plus = 0.0;
};

struct ConditionCDiagnostic {
  std::vector<ConditionCRow> rows;
  bool factorial_bound_f_to_zero = false;  // criterion 1, f side
  bool factorial_bound_g_to_zero = false;  // criterion 1, g side
  bool sup_norms_bounded = false;          // criterion 2
  bool cross_terms_to_zero = false;
};

ConditionCDiagnostic condition_c_diagnostic(const SmoothFunction& f, const SmoothFunction& g,
                                            FracOrder alpha, int p_max,
                                            std::span<const double> t_grid, double a, double b,
                                            int panels = kDefaultQuadPanels);

}  // namespace fracvar
