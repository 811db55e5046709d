#include "fracvar/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracvar {

TimeFunction SmoothFunction::order_view(int p) const {
  if (p < 0 || p > max_order)
    throw std::out_of_range("SmoothFunction: derivative order out of range");
  TimeFunction out;
  out.dim = dim;
  out.eval = [fn = *this, p](double t, std::span<double> dst) { fn.derivative(p, t, dst); };
  return out;
}

C1Function SmoothFunction::c1_view() const { return C1Function{order_view(0), order_view(1)}; }

SmoothFunction polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  SmoothFunction f;
  f.dim = 1;
  f.max_order = kUnlimitedOrder;
  f.derivative = [coeffs = std::move(coeffs)](int p, double t, std::span<double> out) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    double acc = 0.0;
    for (int i = deg; i >= p; --i) {
      double falling = 1.0;
      for (int j = 0; j < p; ++j) falling *= static_cast<double>(i - j);
      acc = acc * t + coeffs[static_cast<size_t>(i)] * falling;
    }
    out[0] = acc;
  };
  return f;
}

SmoothFunction exponential(double rate, double scale) {
  SmoothFunction f;
  f.dim = 1;
  f.max_order = kUnlimitedOrder;
  f.derivative = [rate, scale](int p, double t, std::span<double> out) {
    out[0] = scale * std::pow(rate, p) * std::exp(rate * t);
  };
  return f;
}

SmoothFunction reciprocal() {
  SmoothFunction f;
  f.dim = 1;
  f.max_order = kUnlimitedOrder;
  f.derivative = [](int p, double t, std::span<double> out) {
    double factorial = 1.0;
    for (int j = 2; j <= p; ++j) factorial *= j;
    out[0] = (p % 2 == 0 ? factorial : -factorial) * std::pow(t, -(p + 1));
  };
  return f;
}

SmoothFunction product(SmoothFunction f, SmoothFunction g) {
  if (f.dim != g.dim) throw std::invalid_argument("product: dimensions differ");
  SmoothFunction out;
  out.dim = f.dim;
  out.max_order = std::min(f.max_order, g.max_order);
  out.derivative = [f = std::move(f), g = std::move(g)](int p, double t, std::span<double> dst) {
    std::vector<double> fk(static_cast<size_t>(f.dim));
    std::vector<double> gk(static_cast<size_t>(f.dim));
    std::fill(dst.begin(), dst.end(), 0.0);
    double binom = 1.0;  // C(p, k), updated multiplicatively
    for (int k = 0; k <= p; ++k) {
      f.derivative(k, t, fk);
      g.derivative(p - k, t, gk);
      for (int c = 0; c < f.dim; ++c) dst[static_cast<size_t>(c)] += binom * fk[c] * gk[c];
      binom = binom * (p - k) / (k + 1);
    }
  };
  return out;
}

SmoothFunction stack(std::vector<SmoothFunction> components) {
  if (components.empty()) throw std::invalid_argument("stack: needs at least one component");
  int order = kUnlimitedOrder;
  for (const SmoothFunction& c : components) {
    if (c.dim != 1) throw std::invalid_argument("stack: components must be scalar");
    order = std::min(order, c.max_order);
  }
  SmoothFunction out;
  out.dim = static_cast<int>(components.size());
  out.max_order = order;
  out.derivative = [components = std::move(components)](int p, double t, std::span<double> dst) {
    for (size_t i = 0; i < components.size(); ++i)
      components[i].derivative(p, t, dst.subspan(i, 1));
  };
  return out;
}

std::vector<double> iterated_rl_integral(RlSide side, const SmoothFunction& f, int r,
                                         FracOrder alpha, double a, double b, double t,
                                         int panels) {
  if (r < 0) throw std::invalid_argument("iterated_rl_integral: r >= 0 required");
  return rl_integral(side, f.order_view(0), r + 1.0 - alpha.value, a, b, t, panels);
}

std::vector<double> interior_grid(double a, double b, int n_points) {
  if (!(a < b)) throw std::invalid_argument("interior_grid: a < b required");
  if (n_points < 1) throw std::invalid_argument("interior_grid: n_points >= 1 required");
  std::vector<double> out(static_cast<size_t>(n_points));
  for (int i = 0; i < n_points; ++i)
    out[static_cast<size_t>(i)] = a + (b - a) * (i + 1) / (n_points + 1);
  return out;
}

namespace {

// I^beta of the order-p derivative of fn, with I^0 read as the identity so
// that the alpha = 1, p = 1 corner of the per-step identities stays usable.
std::vector<double> integral_of_order(RlSide side, const SmoothFunction& fn, int p, double beta,
                                      double a, double b, double t, int panels) {
  if (beta == 0.0) {
    std::vector<double> out(static_cast<size_t>(fn.dim), 0.0);
    fn.derivative(p, t, out);
    return out;
  }
  return rl_integral(side, fn.order_view(p), beta, a, b, t, panels);
}

long double dot(std::span<const double> x, std::span<const double> y) {
  long double acc = 0.0L;
  for (size_t i = 0; i < x.size(); ++i) acc += static_cast<long double>(x[i]) * y[i];
  return acc;
}

void require_pair(const SmoothFunction& f, const SmoothFunction& g, int order_needed,
                  const char* who) {
  if (f.dim != g.dim) throw std::invalid_argument(std::string(who) + ": dimensions differ");
  if (f.max_order < order_needed || g.max_order < order_needed)
    throw std::out_of_range(std::string(who) + ": derivative order out of range");
}

double series_partial(const SmoothFunction& f, const SmoothFunction& g, FracOrder alpha,
                      int truncation, double a, double b, double t, int panels) {
  std::vector<double> deriv(static_cast<size_t>(f.dim));
  long double acc = 0.0L;
  double sign = 1.0;
  for (int r = 0; r <= truncation; ++r) {
    const double beta = r + 1.0 - alpha.value;
    const std::vector<double> left = integral_of_order(RlSide::left, f, 0, beta, a, b, t, panels);
    g.derivative(r, t, deriv);
    acc += sign * dot(left, deriv);
    const std::vector<double> right =
        integral_of_order(RlSide::right, g, 0, beta, a, b, t, panels);
    f.derivative(r, t, deriv);
    acc += dot(deriv, right);
    sign = -sign;
  }
  return static_cast<double>(acc);
}

}  // namespace

double transfer_series_value(const SmoothFunction& f, const SmoothFunction& g, FracOrder alpha,
                             int truncation, double a, double b, double t, int panels) {
  if (truncation < 0) throw std::invalid_argument("transfer_series_value: truncation >= 0");
  require_pair(f, g, truncation, "transfer_series_value");
  return series_partial(f, g, alpha, truncation, a, b, t, panels);
}

LeibnizCheckResult leibniz_step_check(const SmoothFunction& f, const SmoothFunction& g,
                                      FracOrder alpha, int p, std::span<const double> t_grid,
                                      double a, double b, int panels) {
  if (p < 1) throw std::invalid_argument("leibniz_step_check: p >= 1 required");
  require_pair(f, g, p, "leibniz_step_check");
  if (t_grid.empty()) throw std::invalid_argument("leibniz_step_check: empty t grid");

  double spacing = (b - a) / 16.0;
  for (size_t i = 0; i + 1 < t_grid.size(); ++i)
    spacing = std::min(spacing, std::fabs(t_grid[i + 1] - t_grid[i]));
  const double h_aux = spacing / 32.0;

  const C1Function f_c1 = f.c1_view();
  const C1Function g_c1 = g.c1_view();
  const double cross_sign = p % 2 == 0 ? 1.0 : -1.0;  // (-1)^p

  const auto bracket_minus = [&](double u) {
    std::vector<double> deriv(static_cast<size_t>(f.dim));
    long double acc = 0.0L;
    double sign = 1.0;
    for (int r = 0; r < p; ++r) {
      const std::vector<double> integ =
          integral_of_order(RlSide::left, f, 0, r + 1.0 - alpha.value, a, b, u, panels);
      g.derivative(r, u, deriv);
      acc += sign * dot(integ, deriv);
      sign = -sign;
    }
    return static_cast<double>(acc);
  };
  const auto bracket_plus = [&](double u) {
    std::vector<double> deriv(static_cast<size_t>(f.dim));
    long double acc = 0.0L;
    for (int r = 0; r < p; ++r) {
      const std::vector<double> integ =
          integral_of_order(RlSide::right, g, 0, r + 1.0 - alpha.value, a, b, u, panels);
      f.derivative(r, u, deriv);
      acc += dot(deriv, integ);
    }
    return static_cast<double>(acc);
  };
  const auto stencil = [h_aux](const auto& fn, double t) {
    return (fn(t - 2 * h_aux) - 8 * fn(t - h_aux) + 8 * fn(t + h_aux) - fn(t + 2 * h_aux)) /
           (12 * h_aux);
  };

  LeibnizCheckResult result;
  std::vector<double> fv(static_cast<size_t>(f.dim));
  std::vector<double> gv(static_cast<size_t>(f.dim));
  for (const double t : t_grid) {
    const std::vector<double> df = rl_derivative(RlSide::left, f_c1, alpha, a, b, t, panels);
    g.value(t, gv);
    const double lhs_minus = static_cast<double>(dot(df, gv));
    const std::vector<double> cross_int_minus =
        integral_of_order(RlSide::left, f, 0, p - alpha.value, a, b, t, panels);
    g.derivative(p, t, gv);
    const double rhs_minus =
        cross_sign * static_cast<double>(dot(cross_int_minus, gv)) + stencil(bracket_minus, t);
    result.max_residual_minus =
        std::max(result.max_residual_minus, std::fabs(lhs_minus - rhs_minus));

    const std::vector<double> dg = rl_derivative(RlSide::right, g_c1, alpha, a, b, t, panels);
    f.value(t, fv);
    const double lhs_plus = -static_cast<double>(dot(fv, dg));
    const std::vector<double> cross_int_plus =
        integral_of_order(RlSide::right, g, 0, p - alpha.value, a, b, t, panels);
    f.derivative(p, t, fv);
    const double rhs_plus =
        -static_cast<double>(dot(fv, cross_int_plus)) + stencil(bracket_plus, t);
    result.max_residual_plus = std::max(result.max_residual_plus, std::fabs(lhs_plus - rhs_plus));
  }
  result.max_residual = std::max(result.max_residual_minus, result.max_residual_plus);
  return result;
}

TruncationResult truncated_transfer_sum(const SmoothFunction& f, const SmoothFunction& g,
                                        FracOrder alpha, int truncation,
                                        std::span<const double> t_grid, double a, double b,
                                        int panels) {
  if (truncation < 0) throw std::invalid_argument("truncated_transfer_sum: truncation >= 0");
  require_pair(f, g, truncation, "truncated_transfer_sum");
  if (t_grid.empty()) throw std::invalid_argument("truncated_transfer_sum: empty t grid");

  TruncationResult result;
  result.truncation = truncation;
  result.t_grid.assign(t_grid.begin(), t_grid.end());
  result.samples.reserve(t_grid.size());
  for (const double t : t_grid)
    result.samples.push_back(series_partial(f, g, alpha, truncation, a, b, t, panels));

  const int next = truncation + 1;
  result.tail_available = f.max_order >= next && g.max_order >= next;
  if (result.tail_available) {
    std::vector<double> deriv(static_cast<size_t>(f.dim));
    const double beta = next - alpha.value;
    for (const double t : t_grid) {
      const std::vector<double> left =
          integral_of_order(RlSide::left, f, 0, beta, a, b, t, panels);
      g.derivative(next, t, deriv);
      double tail = std::fabs(static_cast<double>(dot(left, deriv)));
      const std::vector<double> right =
          integral_of_order(RlSide::right, g, 0, beta, a, b, t, panels);
      f.derivative(next, t, deriv);
      tail += std::fabs(static_cast<double>(dot(deriv, right)));
      result.tail_estimate = std::max(result.tail_estimate, tail);
    }
  }
  return result;
}

namespace {

// Finite-sample trend heuristics for the qualitative flags: "to zero" means
// non-increasing over the tail half and well below the peak at the end.
bool trending_to_zero(const std::vector<double>& v) {
  double peak = 0.0;
  for (const double x : v) peak = std::max(peak, x);
  if (peak == 0.0) return true;
  if (v.size() < 2) return false;
  for (size_t i = v.size() / 2; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i] * (1.0 + 1e-9)) return false;
  return v.back() <= 0.25 * peak;
}

bool stays_bounded(const std::vector<double>& v) {
  return !v.empty() && v.back() <= v.front() * (1.0 + 1e-9);
}

}  // namespace

ConditionCDiagnostic condition_c_diagnostic(const SmoothFunction& f, const SmoothFunction& g,
                                            FracOrder alpha, int p_max,
                                            std::span<const double> t_grid, double a, double b,
                                            int panels) {
  if (p_max < 1) throw std::invalid_argument("condition_c_diagnostic: p_max >= 1 required");
  require_pair(f, g, p_max, "condition_c_diagnostic");
  if (t_grid.empty()) throw std::invalid_argument("condition_c_diagnostic: empty t grid");

  ConditionCDiagnostic diag;
  diag.rows.reserve(static_cast<size_t>(p_max));
  std::vector<double> buf(static_cast<size_t>(f.dim));
  const auto norm = [&buf] {
    long double acc = 0.0L;
    for (const double x : buf) acc += static_cast<long double>(x) * x;
    return static_cast<double>(std::sqrt(acc));
  };

  double factorial = 1.0;  // (p - 1)!
  for (int p = 1; p <= p_max; ++p) {
    if (p >= 2) factorial *= p - 1;
    ConditionCRow row;
    row.p = p;
    for (const double t : t_grid) {
      f.derivative(p, t, buf);
      const double fn = norm();
      g.derivative(p, t, buf);
      const double gn = norm();
      row.factorial_bound_f =
          std::max(row.factorial_bound_f, std::pow(b - t, p - 1) / factorial * fn);
      row.factorial_bound_g =
          std::max(row.factorial_bound_g, std::pow(t - a, p - 1) / factorial * gn);
      row.sup_f = std::max(row.sup_f, fn);
      row.sup_g = std::max(row.sup_g, gn);

      const double beta = p - alpha.value;
      const std::vector<double> left = integral_of_order(RlSide::left, f, 0, beta, a, b, t, panels);
      g.derivative(p, t, buf);
      row.cross_minus =
          std::max(row.cross_minus, std::fabs(static_cast<double>(dot(left, buf))));
      const std::vector<double> right =
          integral_of_order(RlSide::right, g, 0, beta, a, b, t, panels);
      f.derivative(p, t, buf);
      row.cross_plus = std::max(row.cross_plus, std::fabs(static_cast<double>(dot(buf, right))));
    }
    diag.rows.push_back(row);
  }

  std::vector<double> column(diag.rows.size());
  const auto fill = [&](auto member) {
    for (size_t i = 0; i < diag.rows.size(); ++i) column[i] = diag.rows[i].*member;
  };
  fill(&ConditionCRow::factorial_bound_f);
  diag.factorial_bound_f_to_zero = trending_to_zero(column);
  fill(&ConditionCRow::factorial_bound_g);
  diag.factorial_bound_g_to_zero = trending_to_zero(column);
  for (size_t i = 0; i < diag.rows.size(); ++i)
    column[i] = diag.rows[i].cross_minus + diag.rows[i].cross_plus;
  diag.cross_terms_to_zero = trending_to_zero(column);
  fill(&ConditionCRow::sup_f);
  const bool f_bounded = stays_bounded(column);
  fill(&ConditionCRow::sup_g);
  diag.sup_norms_bounded = f_bounded && stays_bounded(column);
  return diag;
}

}  // namespace fracvar
