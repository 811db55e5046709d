#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracvar {

/// Uniform partition of [a, b] into N steps, nodes t_k = a + k h, h = (b - a) / N.
struct Grid {
  double a = 0.0;
  double b = 1.0;
  int n_steps = 2;

  Grid() = default;
  Grid(double a_, double b_, int n) : a(a_), b(b_), n_steps(n) {
    if (!(a < b)) throw std::invalid_argument("Grid: a < b required");
    if (n < 2) throw std::invalid_argument("Grid: N >= 2 required");
  }

  double h() const { return (b - a) / n_steps; }

  // node(N) returns b exactly so that the last node never drifts off the endpoint.
  double node(int k) const { return k == n_steps ? b : a + k * h(); }

  friend bool operator==(const Grid& x, const Grid& y) {
    return x.a == y.a && x.b == y.b && x.n_steps == y.n_steps;
  }
};

/// Values in R^d attached to every grid node k = 0..N. Row-major: node k starts
/// at values[k * dim].
struct Trajectory {
  Grid grid;
  int dim = 1;
  std::vector<double> values;

  Trajectory() = default;
  Trajectory(Grid g, int d)
      : grid(g), dim(d), values(static_cast<size_t>(g.n_steps + 1) * check_dim(d), 0.0) {}
  Trajectory(Grid g, int d, std::vector<double> v) : grid(g), dim(d), values(std::move(v)) {
    check_dim(d);
    if (values.size() != static_cast<size_t>(g.n_steps + 1) * d)
      throw std::invalid_argument("Trajectory: value count must be (N + 1) * dim");
  }

  int n_nodes() const { return grid.n_steps + 1; }

  std::span<const double> node(int k) const {
    return {values.data() + static_cast<size_t>(k) * dim, static_cast<size_t>(dim)};
  }
  std::span<double> node(int k) {
    return {values.data() + static_cast<size_t>(k) * dim, static_cast<size_t>(dim)};
  }
  double at(int k, int c) const { return values[static_cast<size_t>(k) * dim + c]; }
  double& at(int k, int c) { return values[static_cast<size_t>(k) * dim + c]; }

  void require_finite() const {
    for (double v : values)
      if (!std::isfinite(v)) throw std::invalid_argument("Trajectory: non-finite value");
  }

 private:
  static int check_dim(int d) {
    if (d < 1) throw std::invalid_argument("Trajectory: dim >= 1 required");
    return d;
  }
};

/// Values in R^d attached to a contiguous index window [k_lo, k_hi] of a grid.
/// Used for sequences that are only defined on part of the node range, e.g. the
/// backward difference of a trajectory (indices 1..N) or conjugate-momentum
/// samples (indices 1..N).
struct SampledSignal {
  Grid grid;
  int dim = 1;
  int k_lo = 0;
  std::vector<double> values;

  SampledSignal() = default;
  SampledSignal(Grid g, int d, int lo, int hi) : grid(g), dim(d), k_lo(lo) {
    if (d < 1) throw std::invalid_argument("SampledSignal: dim >= 1 required");
    if (lo < 0 || hi > g.n_steps || hi < lo)
      throw std::invalid_argument("SampledSignal: window must satisfy 0 <= k_lo <= k_hi <= N");
    values.assign(static_cast<size_t>(hi - lo + 1) * d, 0.0);
  }

  int k_hi() const { return k_lo + static_cast<int>(values.size()) / dim - 1; }
  int n_samples() const { return static_cast<int>(values.size()) / dim; }

  std::span<const double> node(int k) const {
    return {values.data() + static_cast<size_t>(k - k_lo) * dim, static_cast<size_t>(dim)};
  }
  std::span<double> node(int k) {
    return {values.data() + static_cast<size_t>(k - k_lo) * dim, static_cast<size_t>(dim)};
  }
  double at(int k, int c) const { return values[static_cast<size_t>(k - k_lo) * dim + c]; }
  double& at(int k, int c) { return values[static_cast<size_t>(k - k_lo) * dim + c]; }
};

}  // namespace fracvar
