#include "fracvar/riemann_liouville.hpp"

#include <cmath>
#include <stdexcept>

namespace fracvar {

TimeFunction TimeFunction::scalar(std::function<double(double)> f) {
  return {1, [f = std::move(f)](double t, std::span<double> out) { out[0] = f(t); }};
}

C1Function C1Function::from_value(TimeFunction f, double step) {
  TimeFunction d{f.dim, [f, step](double t, std::span<double> out) {
                   const double h = step * std::max(1.0, std::fabs(t));
                   std::vector<double> hi(out.size()), lo(out.size());
                   f.eval(t + h, hi);
                   f.eval(t - h, lo);
                   for (size_t i = 0; i < out.size(); ++i) out[i] = (hi[i] - lo[i]) / (2.0 * h);
                 }};
  return {std::move(f), std::move(d)};
}

namespace {

void check_rl_domain(RlSide side, double a, double b, double t) {
  if (!(a < b)) throw std::domain_error("rl: a < b required");
  const bool ok = side == RlSide::left ? (t > a && t <= b) : (t >= a && t < b);
  if (!ok)
    throw std::domain_error(side == RlSide::left ? "rl: left side needs t in (a, b]"
                                                 : "rl: right side needs t in [a, b)");
}

}  // namespace

std::vector<double> rl_integral(RlSide side, const TimeFunction& f, double beta, double a,
                                double b, double t, int panels) {
  if (!(beta > 0.0)) throw std::domain_error("rl_integral: beta > 0 required");
  if (panels < 1) throw std::invalid_argument("rl_integral: panels >= 1 required");
  check_rl_domain(side, a, b, t);

  const int m_count = panels;
  const double len = side == RlSide::left ? t - a : b - t;
  const double tau = len / m_count;

  // Node m sits at distance m * tau from t, towards the far endpoint. The panel
  // between nodes m-1 and m contributes, with s the distance in units of tau,
  //   tau^beta * int_{m-1}^{m} s^{beta-1} [ f_{m-1} (m - s) + f_m (s - m + 1) ] ds
  // giving weights B_m on node m-1 and C_m on node m, where
  //   A_m = (m^beta - (m-1)^beta) / beta,
  //   D_m = (m^{beta+1} - (m-1)^{beta+1}) / (beta + 1),
  //   B_m = m A_m - D_m,   C_m = D_m - (m - 1) A_m.
  std::vector<double> weights(static_cast<size_t>(m_count) + 1, 0.0);
  double pow_prev = 0.0;       // (m-1)^beta
  double pow_prev_p1 = 0.0;    // (m-1)^{beta+1}
  for (int m = 1; m <= m_count; ++m) {
    const double pm = std::pow(static_cast<double>(m), beta);
    const double pm_p1 = pm * m;
    const double am = (pm - pow_prev) / beta;
    const double dm = (pm_p1 - pow_prev_p1) / (beta + 1.0);
    weights[m - 1] += m * am - dm;
    weights[m] += dm - (m - 1) * am;
    pow_prev = pm;
    pow_prev_p1 = pm_p1;
  }

  const int d = f.dim;
  std::vector<double> sample(d);
  std::vector<long double> acc(d, 0.0L);
  for (int m = 0; m <= m_count; ++m) {
    // Pin the far endpoint exactly: t -/+ m tau drifts off a or b by rounding,
    // which matters for integrands only defined on [a, b].
    double y;
    if (m == m_count)
      y = side == RlSide::left ? a : b;
    else
      y = side == RlSide::left ? t - m * tau : t + m * tau;
    f.eval(y, sample);
    for (int c = 0; c < d; ++c) acc[c] += static_cast<long double>(weights[m]) * sample[c];
  }

  const double front = std::pow(tau, beta) / std::tgamma(beta);
  std::vector<double> out(d);
  for (int c = 0; c < d; ++c) out[c] = static_cast<double>(front * acc[c]);
  return out;
}

double rl_integral_scalar(RlSide side, const std::function<double(double)>& f, double beta,
                          double a, double b, double t, int panels) {
  return rl_integral(side, TimeFunction::scalar(f), beta, a, b, t, panels)[0];
}

std::vector<double> rl_derivative(RlSide side, const C1Function& f, FracOrder alpha, double a,
                                  double b, double t, int panels) {
  check_rl_domain(side, a, b, t);
  const int d = f.value.dim;
  if (f.deriv.dim != d) throw std::invalid_argument("rl_derivative: value/deriv dim mismatch");

  std::vector<double> out(d);
  if (alpha.value == 1.0) {
    f.deriv.eval(t, out);
    if (side == RlSide::right)
      for (double& v : out) v = -v;
    return out;
  }

  const double beta = 1.0 - alpha.value;
  const std::vector<double> tail = rl_integral(side, f.deriv, beta, a, b, t, panels);
  std::vector<double> boundary(d);
  const double endpoint = side == RlSide::left ? a : b;
  const double gap = side == RlSide::left ? t - a : b - t;
  f.value.eval(endpoint, boundary);
  const double factor = std::pow(gap, -alpha.value) / std::tgamma(beta);
  const double sign = side == RlSide::left ? 1.0 : -1.0;
  for (int c = 0; c < d; ++c) out[c] = boundary[c] * factor + sign * tail[c];
  return out;
}

}  // namespace fracvar
