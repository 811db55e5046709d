#include <cmath>
#include <vector>

#include "doctest.h"
#include "fracvar/dynamics.hpp"
#include "fracvar/fracops.hpp"
#include "fracvar/model.hpp"
#include "fracvar/noether.hpp"
#include "fracvar/reference.hpp"
#include "test_support.hpp"

using namespace fracvar;
using testsupport::max_abs_diff;
using testsupport::random_signal;
using testsupport::random_trajectory;

namespace {

void check_matrix(const ShiftMatrix& m, const std::vector<std::vector<int>>& expect,
                  int expected_nonzeros) {
  REQUIRE(m.size() == static_cast<int>(expect.size()));
  int nonzeros = 0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      CHECK(m.at(i, j) == expect[i][j]);
      if (m.at(i, j) != 0) ++nonzeros;
    }
  CHECK(nonzeros == expected_nonzeros);
}

}  // namespace

TEST_SUITE_BEGIN("noether");

TEST_CASE("A_1 is minus the identity on every row") {
  const ShiftMatrix m = build_shift_matrix(1, 5);
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 5; ++j) CHECK(m.at(i, j) == (i == j ? -1 : 0));
}

TEST_CASE("A_2 at N = 5 matches the golden matrix") {
  check_matrix(build_shift_matrix(2, 5),
               {{0, 0, 0, 0, 0, 0},
                {0, -1, 0, 0, 0, 0},
                {1, -1, -1, 0, 0, 0},
                {1, 0, -1, -1, 0, 0},
                {1, 0, 0, -1, 0, 0},
                {1, 0, 0, -1, 0, 0}},
               11);
}

TEST_CASE("A_3 at N = 5 matches the golden matrix") {
  check_matrix(build_shift_matrix(3, 5),
               {{0, 0, 0, 0, 0, 0},
                {0, -1, 0, 0, 0, 0},
                {0, -1, -1, 0, 0, 0},
                {1, -1, -1, 0, 0, 0},
                {1, 0, -1, 0, 0, 0},
                {1, 0, -1, 0, 0, 0}},
               10);
}

TEST_CASE("A_4 at N = 5 matches the golden matrix") {
  check_matrix(build_shift_matrix(4, 5),
               {{0, 0, 0, 0, 0, 0},
                {0, -1, 0, 0, 0, 0},
                {0, -1, 0, 0, 0, 0},
                {0, -1, 0, 0, 0, 0},
                {1, -1, 0, 0, 0, 0},
                {1, -1, 0, 0, 0, 0}},
               7);
}

TEST_CASE("shift pads with zeros past the final sample") {
  const Grid grid(0.0, 1.0, 4);
  SampledSignal s(grid, 1, 1, 4);
  for (int k = 1; k <= 4; ++k) s.at(k, 0) = 10.0 * k;
  const SampledSignal shifted = shift(s, 2);
  CHECK(shifted.k_lo == 1);
  CHECK(shifted.k_hi() == 4);
  CHECK(shifted.at(1, 0) == 30.0);
  CHECK(shifted.at(2, 0) == 40.0);
  CHECK(shifted.at(3, 0) == 0.0);
  CHECK(shifted.at(4, 0) == 0.0);
}

TEST_CASE("shifted_dot contracts components with zero padding") {
  const Grid grid(0.0, 1.0, 3);
  SampledSignal f(grid, 2, 0, 3), g(grid, 2, 1, 3);
  for (int k = 0; k <= 3; ++k) {
    f.at(k, 0) = k + 1.0;
    f.at(k, 1) = 2.0;
  }
  for (int k = 1; k <= 3; ++k) {
    g.at(k, 0) = 1.0;
    g.at(k, 1) = k;
  }
  const SampledSignal d = shifted_dot(f, g, 1);
  CHECK(d.dim == 1);
  CHECK(d.k_lo == 0);
  CHECK(d.k_hi() == 3);
  CHECK(d.at(0, 0) == 1.0 * 1.0 + 2.0 * 1.0);  // F_0 . G_1
  CHECK(d.at(1, 0) == 2.0 * 1.0 + 2.0 * 2.0);  // F_1 . G_2
  CHECK(d.at(2, 0) == 3.0 * 1.0 + 2.0 * 3.0);  // F_2 . G_3
  CHECK(d.at(3, 0) == 0.0);                    // pad
}

TEST_CASE("alpha = 1 conserved quantity collapses to the shifted dot exactly") {
  const Grid grid(0.0, 1.0, 12);
  const SampledSignal f = random_signal(grid, 2, 0, 12, 301);
  const SampledSignal g = random_signal(grid, 2, 1, 12, 302);
  const std::vector<double> c = conserved_quantity(f, g, FracOrder(1.0));
  const SampledSignal expect = shifted_dot(f, g, 1);
  REQUIRE(c.size() == expect.values.size());
  for (size_t i = 0; i < c.size(); ++i) CHECK(c[i] == expect.values[i]);
  CHECK(c.back() == 0.0);
  // Spot-check the dot itself against a direct accumulation.
  const double manual = f.at(3, 0) * g.at(4, 0) + f.at(3, 1) * g.at(4, 1);
  CHECK(c[3] == doctest::Approx(manual).epsilon(1e-15));
}

TEST_CASE("the four conserved-quantity implementations agree pairwise") {
  for (const int n : {8, 40, 90}) {
    const Grid grid(0.0, 1.0, n);
    for (const int d : {1, 2}) {
      const SampledSignal f = random_signal(grid, d, 0, n, static_cast<uint32_t>(400 + n + d));
      const SampledSignal g = random_signal(grid, d, 1, n, static_cast<uint32_t>(500 + n + d));
      for (const double alpha : {0.2, 0.5, 0.77, 1.0}) {
        const std::vector<double> prod = conserved_quantity(f, g, FracOrder(alpha));
        const std::vector<double> direct =
            conserved_quantity_direct(f, g, FracOrder(alpha), grid.h());
        const std::vector<double> streaming = reference::conserved_quantity_streaming(f, g, alpha);
        const std::vector<double> dense = reference::conserved_quantity_matrices(f, g, alpha);
        CHECK(max_abs_diff(prod, direct) <= 1e-12);
        CHECK(max_abs_diff(prod, streaming) <= 1e-12);
        CHECK(max_abs_diff(prod, dense) <= 1e-12);
        CHECK(max_abs_diff(direct, streaming) <= 1e-12);
        CHECK(max_abs_diff(direct, dense) <= 1e-12);
        CHECK(max_abs_diff(streaming, dense) <= 1e-12);
      }
    }
  }
}

TEST_CASE("discrete Leibniz rule links successive conserved samples") {
  // C_i - C_{i-1} = h^alpha [ G_i . (delta_minus F)_i - F_i . (delta_plus G)_i ]
  // for i = 1..N-1, for arbitrary signals, not only solutions.
  for (const int n : {6, 25}) {
    const Grid grid(0.0, 2.0, n);
    for (const int d : {1, 3}) {
      const SampledSignal f = random_signal(grid, d, 0, n, static_cast<uint32_t>(600 + n + d));
      const SampledSignal g = random_signal(grid, d, 1, n, static_cast<uint32_t>(700 + n + d));
      for (const double alpha : {0.3, 0.8, 1.0}) {
        const std::vector<double> c = conserved_quantity(f, g, FracOrder(alpha));
        const SampledSignal df = delta_minus(f, FracOrder(alpha));
        const SampledSignal dg = delta_plus(g, FracOrder(alpha));
        const double scale = std::pow(grid.h(), alpha);
        for (int i = 1; i <= n - 1; ++i) {
          double bilinear = 0.0;
          for (int comp = 0; comp < d; ++comp)
            bilinear += g.at(i, comp) * df.at(i, comp) - f.at(i, comp) * dg.at(i, comp);
          CHECK(std::fabs(c[i] - c[i - 1] - scale * bilinear) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("final sample carries exactly the closure term") {
  // C_N - C_{N-1} = c[1] F_{N-1} . G_N = -alpha F_{N-1} . G_N.
  const int n = 14;
  const Grid grid(0.0, 1.0, n);
  const SampledSignal f = random_signal(grid, 2, 0, n, 801);
  const SampledSignal g = random_signal(grid, 2, 1, n, 802);
  for (const double alpha : {0.4, 1.0}) {
    const std::vector<double> c = conserved_quantity(f, g, FracOrder(alpha));
    double dot = 0.0;
    for (int comp = 0; comp < 2; ++comp) dot += f.at(n - 1, comp) * g.at(n, comp);
    CHECK(std::fabs(c[n] - c[n - 1] + alpha * dot) <= 1e-13);
  }
}

TEST_CASE("noether_inputs packages generator and momentum samples") {
  const Grid grid(0.0, 1.0, 8);
  const Trajectory q = random_trajectory(grid, 2, 810);
  const FracOrder alpha(0.5);
  const NoetherInputs in = noether_inputs(quadratic_lagrangian(), rotation_group_2d(), q, alpha);
  CHECK(in.generator_samples.k_lo == 0);
  CHECK(in.generator_samples.k_hi() == 8);
  CHECK(in.momentum_samples.k_lo == 1);
  CHECK(in.momentum_samples.k_hi() == 8);
  // Generator of planar rotations is (-x2, x1); momentum of the quadratic
  // Lagrangian is the backward difference itself.
  CHECK(in.generator_samples.at(3, 0) == -q.at(3, 1));
  CHECK(in.generator_samples.at(3, 1) == q.at(3, 0));
  const SampledSignal dq = delta_minus(q, alpha);
  CHECK(in.momentum_samples.at(5, 0) == doctest::Approx(dq.at(5, 0)).epsilon(1e-14));
  CHECK(in.momentum_samples.at(5, 1) == doctest::Approx(dq.at(5, 1)).epsilon(1e-14));
}

TEST_CASE("conserved quantity is constant along a solved invariant system") {
  const Grid grid(0.0, 1.0, 40);
  const std::vector<double> q0{1.0, 2.0}, qn{2.0, 1.0};
  const FracOrder alpha(0.5);
  const SolveResult solved = solve_bvp(quadratic_lagrangian(), alpha, grid, q0, qn);
  REQUIRE(solved.ok());
  const NoetherInputs in =
      noether_inputs(quadratic_lagrangian(), rotation_group_2d(), solved.trajectory, alpha);
  const ConservationReport report =
      constancy_report(conserved_quantity(in.generator_samples, in.momentum_samples, alpha));
  CHECK(report.rel_spread <= 1e-10);
  CHECK(report.first_node_dev <= 1e-12);
  // The last node is structurally off by the closure term, which is O(1) here.
  double dot = 0.0;
  for (int comp = 0; comp < 2; ++comp)
    dot += in.generator_samples.at(39, comp) * in.momentum_samples.at(40, comp);
  CHECK(report.final_node_dev > 1e-3);
  CHECK(report.final_node_dev == doctest::Approx(0.5 * std::fabs(dot)).epsilon(1e-9));
}

TEST_CASE("constancy_report statistics on hand-built vectors") {
  const ConservationReport flat = constancy_report({7.0, 5.0, 5.0, 5.0, 5.0, 5.0});
  CHECK(flat.c_ref == 5.0);
  CHECK(flat.max_abs_dev == 0.0);
  CHECK(flat.rel_spread == 0.0);
  CHECK(flat.first_node_dev == 2.0);
  CHECK(flat.final_node_dev == 0.0);

  const ConservationReport bumpy = constancy_report({0.0, 1.0, 1.0, 1.0, 1.001, 1.0});
  CHECK(bumpy.c_ref == 1.0);
  CHECK(bumpy.rel_spread == doctest::Approx(1e-3).epsilon(1e-9));
  CHECK(bumpy.first_node_dev == 1.0);
  CHECK(bumpy.final_node_dev == 0.0);
}

TEST_CASE("window and argument validation") {
  const Grid grid(0.0, 1.0, 6);
  CHECK_THROWS_AS(build_shift_matrix(0, 6), std::out_of_range);
  CHECK_THROWS_AS(build_shift_matrix(6, 6), std::out_of_range);
  CHECK_THROWS_AS(build_shift_matrix(1, 1), std::invalid_argument);

  const SampledSignal good_f = random_signal(grid, 1, 0, 6, 901);
  const SampledSignal good_g = random_signal(grid, 1, 1, 6, 902);
  const SampledSignal partial_f = random_signal(grid, 1, 1, 6, 903);
  const SampledSignal partial_g = random_signal(grid, 1, 2, 6, 904);
  const SampledSignal short_g = random_signal(grid, 1, 1, 5, 905);
  const FracOrder alpha(0.5);
  CHECK_THROWS_AS(conserved_quantity(partial_f, good_g, alpha), std::invalid_argument);
  CHECK_THROWS_AS(conserved_quantity(good_f, partial_g, alpha), std::invalid_argument);
  CHECK_THROWS_AS(conserved_quantity(good_f, short_g, alpha), std::invalid_argument);
  const SampledSignal wrong_dim = random_signal(grid, 2, 1, 6, 906);
  CHECK_THROWS_AS(conserved_quantity(good_f, wrong_dim, alpha), std::invalid_argument);
  const SampledSignal other_grid = random_signal(Grid(0.0, 2.0, 6), 1, 1, 6, 907);
  CHECK_THROWS_AS(conserved_quantity(good_f, other_grid, alpha), std::invalid_argument);

  CHECK_THROWS_AS(constancy_report({1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(conserved_quantity_direct(good_f, good_g, alpha, 0.0), std::invalid_argument);
}

TEST_SUITE_END();
