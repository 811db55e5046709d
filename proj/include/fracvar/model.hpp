#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracvar/fracops.hpp"
#include "fracvar/grid.hpp"

namespace fracvar {

using StateView = std::span<const double>;

/// Lagrangian L(x, v, t) with partial gradients in x and v. The callables must
/// be pure and safe to call concurrently; the library evaluates them from
/// parallel loops. `structure` declares whether both gradients are affine in
/// (x, v), which lets the boundary-value solver assemble an exact constant
/// Jacobian from unit-step differences.
struct Lagrangian {
  enum class Structure { general, quadratic };

  std::function<double(StateView x, StateView v, double t)> value;
  std::function<void(StateView x, StateView v, double t, std::span<double> out)> grad_x;
  std::function<void(StateView x, StateView v, double t, std::span<double> out)> grad_v;
  Structure structure = Structure::general;
};

/// L(x, v) = (|x|^2 + |v|^2) / 2 in any dimension.
Lagrangian quadratic_lagrangian();

/// L(x, v) = |v|^2 / 2.
Lagrangian free_particle_lagrangian();

/// L(x, v) = x . v. Invariant under simultaneous rotations of x and v (they
/// are orthogonal maps) but not under translations; the negative control.
Lagrangian bilinear_lagrangian();

/// Wraps a plain value function with central-difference gradients,
/// step 1e-6 * max(1, |component|).
Lagrangian lagrangian_with_fd_gradients(
    std::function<double(StateView, StateView, double)> value,
    Lagrangian::Structure structure = Lagrangian::Structure::general);

/// One-parameter transformation group acting on states, phi(s, .) : R^d -> R^d,
/// with phi(0, .) = id, and its infinitesimal generator d/ds phi(s, x) at s = 0.
struct SymmetryGroup {
  int dim = 0;
  std::function<void(double s, StateView x, std::span<double> out)> phi;
  std::function<void(StateView x, std::span<double> out)> generator;
};

/// Planar rotations: phi(s, x) = (cos s x1 - sin s x2, sin s x1 + cos s x2),
/// generator (-x2, x1).
SymmetryGroup rotation_group_2d();

/// Translations along a fixed direction: phi(s, x) = x + s * direction.
SymmetryGroup translation_group(std::vector<double> direction);

/// Applies phi(s, .) to every node of a trajectory.
Trajectory map_nodes(const SymmetryGroup& group, double s, const Trajectory& q);

inline constexpr std::array<double, 4> kDefaultInvarianceSamples{-0.5, -0.1, 0.1, 0.5};

struct InvarianceReport {
  double max_abs_dev = 0.0;
  bool pass = false;
  double worst_s = 0.0;
  int worst_k = 0;
};

/// Samples whether L(phi(s, Q)_k, delta_minus(phi(s, Q))_k, t_k) equals the
/// untransformed value for every k = 1..N and each sampled s. Accepts any
/// trajectory; invariance in this discrete sense is a statement about the
/// composed samples, not about solutions. Since delta_minus does not
/// annihilate constants for alpha < 1, translation invariance of a
/// velocity-only Lagrangian holds only at alpha = 1.
InvarianceReport invariance_check(const Lagrangian& lagrangian, const SymmetryGroup& group,
                                  const Trajectory& q, FracOrder alpha,
                                  std::span<const double> s_samples = kDefaultInvarianceSamples,
                                  double tol = 1e-10);

}  // namespace fracvar
