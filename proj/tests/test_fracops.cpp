#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fracvar/fracops.hpp"
#include "fracvar/reference.hpp"
#include "fracvar/riemann_liouville.hpp"
#include "test_support.hpp"

using namespace fracvar;
using testsupport::max_abs_diff;
using testsupport::random_trajectory;

TEST_SUITE_BEGIN("fracops");

TEST_CASE("GL coefficients at alpha = 1/2 match the hand-computed table") {
  const GLCoefficients c = gl_coefficients(FracOrder(0.5), 4);
  // Dyadic rationals, so the comparison is exact.
  CHECK(c[0] == 1.0);
  CHECK(c[1] == -0.5);
  CHECK(c[2] == -0.125);
  CHECK(c[3] == -0.0625);
  CHECK(c[4] == -0.0390625);
  CHECK(c.max_index() == 4);
}

TEST_CASE("GL coefficients at alpha = 1 collapse to (1, -1, 0, ...)") {
  const GLCoefficients c = gl_coefficients(FracOrder(1.0), 6);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == -1.0);
  for (int r = 2; r <= 6; ++r) CHECK(c[r] == 0.0);
}

TEST_CASE("recurrence agrees with the lgamma closed form out to r = 1000") {
  for (const double alpha : {0.2, 0.5, 0.77, 0.99, 1.0}) {
    const GLCoefficients c = gl_coefficients(FracOrder(alpha), 1000);
    for (int r = 0; r <= 1000; ++r) {
      const double exact = reference::gl_coefficient_closed_form(alpha, r);
      const double scale = std::max(std::fabs(exact), 1e-300);
      CHECK(std::fabs(c[r] - exact) / scale <= 5e-12);
    }
  }
}

TEST_CASE("sign, decay, and partial-sum structure for 0 < alpha < 1") {
  const int big = 1000;
  for (const double alpha : {0.1, 0.5, 0.9}) {
    const GLCoefficients c = gl_coefficients(FracOrder(alpha), big);
    double partial = c[0];
    for (int r = 1; r <= big; ++r) {
      CHECK(c[r] < 0.0);
      CHECK(std::fabs(c[r]) <= std::fabs(c[r - 1]));
      // Partial sums decrease to zero from above; closed form
      // S_k = Gamma(k + 1 - alpha) / (Gamma(1 - alpha) Gamma(k + 1)).
      const double prev = partial;
      partial += c[r];
      CHECK(partial > 0.0);
      CHECK(partial < prev);
      const double closed =
          std::exp(std::lgamma(r + 1 - alpha) - std::lgamma(1 - alpha) - std::lgamma(r + 1.0));
      CHECK(std::fabs(partial - closed) <= 1e-12);
    }
    // Gautschi's inequality bounds the tail: S_k < k^{-alpha} / Gamma(1 - alpha) <= k^{-alpha}.
    CHECK(partial <= std::pow(1000.0, -alpha));
  }
}

TEST_CASE("delta_minus hand values on the constant trajectory") {
  // Q = (1, 1, 1) on [0, 1] with N = 2: h = 1/2, alpha = 1/2.
  Trajectory q(Grid(0.0, 1.0, 2), 1, {1.0, 1.0, 1.0});
  const SampledSignal d = delta_minus(q, FracOrder(0.5));
  CHECK(d.k_lo == 1);
  CHECK(d.k_hi() == 2);
  // h^{-1/2} (c0 Q1 + c1 Q0) = sqrt(2) * 1/2 and sqrt(2) * 3/8.
  CHECK(d.at(1, 0) == doctest::Approx(0.7071067811865476).epsilon(1e-14));
  CHECK(d.at(2, 0) == doctest::Approx(0.5303300858899107).epsilon(1e-14));
}

TEST_CASE("delta_plus mirrors delta_minus on the constant trajectory") {
  Trajectory q(Grid(0.0, 1.0, 2), 1, {1.0, 1.0, 1.0});
  const SampledSignal d = delta_plus(q, FracOrder(0.5));
  CHECK(d.k_lo == 0);
  CHECK(d.k_hi() == 1);
  CHECK(d.at(0, 0) == doctest::Approx(0.5303300858899107).epsilon(1e-14));
  CHECK(d.at(1, 0) == doctest::Approx(0.7071067811865476).epsilon(1e-14));
}

TEST_CASE("alpha = 1 reduces to the Euler differences") {
  const Grid grid(0.0, 1.0, 16);  // h = 1/16, exactly representable
  const Trajectory q = random_trajectory(grid, 2, 101);
  const FracOrder one(1.0);
  const SampledSignal dm = delta_minus(q, one);
  for (int k = 1; k <= 16; ++k)
    for (int c = 0; c < 2; ++c)
      CHECK(std::fabs(dm.at(k, c) - (q.at(k, c) - q.at(k - 1, c)) * 16.0) <= 1e-13);
  const SampledSignal dp = delta_plus(q, one);
  for (int k = 0; k < 16; ++k)
    for (int c = 0; c < 2; ++c)
      CHECK(std::fabs(dp.at(k, c) - (q.at(k, c) - q.at(k + 1, c)) * 16.0) <= 1e-13);
}

TEST_CASE("difference operators are linear") {
  const Grid grid(0.0, 2.0, 13);
  const Trajectory x = random_trajectory(grid, 3, 7);
  const Trajectory y = random_trajectory(grid, 3, 8);
  Trajectory z(grid, 3);
  for (size_t i = 0; i < z.values.size(); ++i) z.values[i] = 2.5 * x.values[i] - 0.75 * y.values[i];
  for (const double alpha : {0.3, 1.0}) {
    const SampledSignal dx = delta_minus(x, FracOrder(alpha));
    const SampledSignal dy = delta_minus(y, FracOrder(alpha));
    const SampledSignal dz = delta_minus(z, FracOrder(alpha));
    for (size_t i = 0; i < dz.values.size(); ++i)
      CHECK(std::fabs(dz.values[i] - (2.5 * dx.values[i] - 0.75 * dy.values[i])) <= 1e-12);
  }
}

TEST_CASE("production differences match the reference double loops") {
  for (const int n : {8, 64, 301}) {
    const Grid grid(0.0, 1.5, n);
    for (const double alpha : {0.25, 0.5, 0.9, 1.0}) {
      const Trajectory q = random_trajectory(grid, 2, static_cast<uint32_t>(1000 + n));
      const SampledSignal pm = delta_minus(q, FracOrder(alpha));
      const SampledSignal rm = reference::delta_minus(q, alpha);
      CHECK(max_abs_diff(pm.values, rm.values) <= 1e-11);
      const SampledSignal pp = delta_plus(q, FracOrder(alpha));
      const SampledSignal rp = reference::delta_plus(q, alpha);
      CHECK(max_abs_diff(pp.values, rp.values) <= 1e-11);
    }
  }
}

TEST_CASE("left RL integral power rule") {
  // I^beta_-[(y - a)^gamma](t) = Gamma(gamma + 1) / Gamma(beta + gamma + 1) (t - a)^{beta + gamma}
  const double a = 0.5, b = 2.5;
  for (const double beta : {0.5, 1.5, 2.5}) {
    for (const int gamma : {0, 1, 2}) {
      auto f = [&](double y) { return std::pow(y - a, gamma); };
      for (int i = 1; i <= 10; ++i) {
        const double t = a + (b - a) * i / 11.0;
        const double exact = std::tgamma(gamma + 1.0) / std::tgamma(beta + gamma + 1.0) *
                             std::pow(t - a, beta + gamma);
        const double got = rl_integral_scalar(RlSide::left, f, beta, a, b, t);
        // The rule is exact for affine integrands; gamma = 2 relies on the
        // O(panel^2) quadrature error staying under the relative tolerance.
        const double tol = gamma <= 1 ? 1e-12 : 1e-6;
        CHECK(std::fabs(got - exact) <= tol * std::max(1.0, std::fabs(exact)));
      }
    }
  }
}

TEST_CASE("right RL integral power rule") {
  const double a = 0.5, b = 2.5;
  for (const double beta : {0.5, 1.5, 2.5}) {
    for (const int gamma : {0, 1, 2}) {
      auto f = [&](double y) { return std::pow(b - y, gamma); };
      for (int i = 1; i <= 10; ++i) {
        const double t = a + (b - a) * i / 11.0;
        const double exact = std::tgamma(gamma + 1.0) / std::tgamma(beta + gamma + 1.0) *
                             std::pow(b - t, beta + gamma);
        const double got = rl_integral_scalar(RlSide::right, f, beta, a, b, t);
        const double tol = gamma <= 1 ? 1e-12 : 1e-6;
        CHECK(std::fabs(got - exact) <= tol * std::max(1.0, std::fabs(exact)));
      }
    }
  }
}

TEST_CASE("RL quadrature is second order in the panel count") {
  const double a = 0.0, b = 1.0, beta = 0.5, t = 0.8;
  auto f = [](double y) { return std::pow(y, 2.5); };
  const double exact = std::tgamma(3.5) / std::tgamma(4.0) * std::pow(t, 3.0);
  const double err128 = std::fabs(rl_integral_scalar(RlSide::left, f, beta, a, b, t, 128) - exact);
  const double err512 = std::fabs(rl_integral_scalar(RlSide::left, f, beta, a, b, t, 512) - exact);
  CHECK(err512 < err128 / 8.0);  // second order would give /16; allow slack
}

TEST_CASE("RL integrals satisfy the semigroup property") {
  // I^{b1}_- (I^{b2}_- f) = I^{b1 + b2}_- f, checked on a smooth f.
  const double a = 0.2, b = 1.7, b1 = 0.75, b2 = 0.75;
  auto f = [](double y) { return std::cos(y); };
  auto inner = [&](double y) {
    return y <= a ? 0.0 : rl_integral_scalar(RlSide::left, f, b2, a, b, y);
  };
  for (const double t : {0.6, 1.1, 1.6}) {
    const double composed = rl_integral_scalar(RlSide::left, inner, b1, a, b, t, 512);
    const double direct = rl_integral_scalar(RlSide::left, f, b1 + b2, a, b, t);
    CHECK(std::fabs(composed - direct) <= 1e-5);
  }
}

TEST_CASE("RL derivative at alpha = 1 is the classical derivative") {
  C1Function f{TimeFunction::scalar([](double t) { return std::sin(t); }),
               TimeFunction::scalar([](double t) { return std::cos(t); })};
  const FracOrder one(1.0);
  for (const double t : {0.3, 0.7, 1.0}) {
    CHECK(rl_derivative(RlSide::left, f, one, 0.0, 1.5, t)[0] == std::cos(t));
    CHECK(rl_derivative(RlSide::right, f, one, 0.0, 1.5, t)[0] == -std::cos(t));
  }
}

TEST_CASE("left RL derivative power rule") {
  // D^alpha_-[(y - a)^gamma](t) = Gamma(gamma + 1) / Gamma(gamma + 1 - alpha) (t - a)^{gamma - alpha}
  const double a = 0.25, b = 2.0, alpha = 0.5;
  for (const int gamma : {1, 2}) {
    C1Function f{TimeFunction::scalar([=](double y) { return std::pow(y - a, gamma); }),
                 TimeFunction::scalar([=](double y) { return gamma * std::pow(y - a, gamma - 1); })};
    for (int i = 1; i <= 8; ++i) {
      const double t = a + (b - a) * i / 9.0;
      const double exact = std::tgamma(gamma + 1.0) / std::tgamma(gamma + 1.0 - alpha) *
                           std::pow(t - a, gamma - alpha);
      const double got = rl_derivative(RlSide::left, f, FracOrder(alpha), a, b, t)[0];
      // f' is affine for gamma <= 2, so the integrated-by-parts form is exact
      // up to roundoff.
      CHECK(std::fabs(got - exact) <= 1e-12 * std::max(1.0, std::fabs(exact)));
    }
  }
}

TEST_CASE("right RL half-derivative of the identity matches the closed form") {
  // D^{1/2}_+[y](t) = b (b - t)^{-1/2} / sqrt(pi) - (b - t)^{1/2} / Gamma(3/2) on [0, b].
  const double a = 0.0, b = 1.0;
  C1Function f{TimeFunction::scalar([](double y) { return y; }),
               TimeFunction::scalar([](double) { return 1.0; })};
  for (const double t : {0.0, 0.25, 0.5, 0.9}) {
    const double exact = b / (std::sqrt(std::numbers::pi) * std::sqrt(b - t)) -
                         std::sqrt(b - t) / std::tgamma(1.5);
    const double got = rl_derivative(RlSide::right, f, FracOrder(0.5), a, b, t)[0];
    CHECK(std::fabs(got - exact) <= 1e-12 * std::max(1.0, std::fabs(exact)));
  }
}

TEST_CASE("C1Function::from_value differentiates without an analytic derivative") {
  const C1Function f =
      C1Function::from_value(TimeFunction::scalar([](double t) { return std::exp(t); }));
  std::vector<double> out(1);
  f.deriv.eval(0.5, out);
  CHECK(out[0] == doctest::Approx(std::exp(0.5)).epsilon(1e-9));
}

TEST_CASE("domain and argument validation") {
  auto f = [](double) { return 1.0; };
  CHECK_THROWS_AS(rl_integral_scalar(RlSide::left, f, 0.0, 0.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(rl_integral_scalar(RlSide::left, f, -1.0, 0.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(rl_integral_scalar(RlSide::left, f, 0.5, 0.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(rl_integral_scalar(RlSide::right, f, 0.5, 0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(rl_integral_scalar(RlSide::left, f, 0.5, 0.0, 1.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(rl_integral_scalar(RlSide::right, f, 0.5, 0.0, 1.0, 1.1), std::domain_error);
  CHECK_THROWS_AS(rl_integral_scalar(RlSide::left, f, 0.5, 0.0, 1.0, 0.5, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(FracOrder(0.0), std::invalid_argument);
  CHECK_THROWS_AS(FracOrder(1.5), std::invalid_argument);
  CHECK_THROWS_AS(FracOrder(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1.0, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(Grid(0.0, 1.0, 1), std::invalid_argument);
  SampledSignal single(Grid(0.0, 1.0, 4), 1, 2, 2);
  CHECK_THROWS_AS(delta_minus(single, FracOrder(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(delta_plus(single, FracOrder(0.5)), std::invalid_argument);
}

TEST_SUITE_END();
