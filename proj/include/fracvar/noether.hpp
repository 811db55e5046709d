#pragma once

#include <cstdint>
#include <vector>

#include "fracvar/dynamics.hpp"
#include "fracvar/fracops.hpp"
#include "fracvar/grid.hpp"
#include "fracvar/model.hpp"

namespace fracvar {

/// Structured (N+1) x (N+1) matrix A_r with entries in {-1, 0, 1}, r = 1..N-1.
/// A_1 = -Id. For r >= 2:
///   row 0 is zero,
///   rows 1 <= i <= N-1:  (A_r)_{i,j} = [j = 0][r <= i] - [0 <= i - j <= r - 1][1 <= j <= N - r],
///   row N duplicates row N-1.
struct ShiftMatrix {
  int order = 1;    // r
  int n_steps = 2;  // N
  std::vector<int8_t> entries;  // (N + 1)^2, row-major

  int at(int i, int j) const { return entries[static_cast<size_t>(i) * (n_steps + 1) + j]; }
  int size() const { return n_steps + 1; }
};

ShiftMatrix build_shift_matrix(int r, int n_steps);

/// Index shift with zero padding past the final sample:
/// (shift(s, r))_k = s_{k+r} when k + r <= k_hi, else 0. Window unchanged.
SampledSignal shift(const SampledSignal& s, int r);

/// Scalar signal of shifted dot products, (F . shift(G, r))_j = F_j . G_{j+r}
/// with zero padding when j + r falls outside G's window. Defined on F's window.
SampledSignal shifted_dot(const SampledSignal& f, const SampledSignal& g, int r = 1);

/// The finitely-computable conserved quantity
///   C = sum_{r=1}^{N-1} c[r] A_r (F . shift(G, r)),
/// evaluated without materialising any A_r: per output index the A_r row
/// pattern reduces to one head term plus a contiguous window sum, which prefix
/// tables make O(1), for O(N^2) total work. All accumulation is in long double.
///
/// F must cover nodes 0..N; G must cover 1..N (an index-0 sample, if present,
/// is never read). On solutions of the discrete Euler-Lagrange equations the
/// samples C_0..C_{N-1} coincide; C_N instead carries the closure term
/// c[1] F_{N-1}.G_N because the zero pad meets A_1, which does not duplicate
/// its last row. At alpha = 1 the whole vector collapses to shifted_dot(F, G).
std::vector<double> conserved_quantity(const SampledSignal& f, const SampledSignal& g,
                                       FracOrder alpha);

/// Same quantity built the way the telescoping proof constructs it:
///   C_i = -c[1] (F . shift(G, 1))_i + H_i,
///   H_i = h sum_{j=1}^{i} J_j,   H_0 = 0,  J_N = 0 (so H_N = H_{N-1}),
///   J_j = (1/h) [ (sum_{r=2}^{j} c[r] F_{j-r}) . G_j
///                 - F_j . (sum_{r=2}^{N-j} c[r] G_{j+r}) ].
/// The h factors cancel algebraically but are kept as written. Serves as an
/// independently-coded oracle for conserved_quantity.
std::vector<double> conserved_quantity_direct(const SampledSignal& f, const SampledSignal& g,
                                              FracOrder alpha, double h);

/// Symmetry data entering the conservation law along a trajectory:
/// generator samples F_k = generator(Q_k) for k = 0..N and conjugate-momentum
/// samples G_k = dL/dv(Q_k, (delta_minus Q)_k, t_k) for k = 1..N.
struct NoetherInputs {
  SampledSignal generator_samples;  // F, window 0..N
  SampledSignal momentum_samples;   // G, window 1..N
};

NoetherInputs noether_inputs(const Lagrangian& lagrangian, const SymmetryGroup& group,
                             const Trajectory& q, FracOrder alpha);

/// Constancy statistics of a conserved-quantity sample vector C_0..C_N.
/// The reference value is C_1. Statistics cover the interior window
/// k = 1..N-1: the two endpoint samples are structurally special (see
/// conserved_quantity) and are reported separately instead of polluting the
/// spread.
struct ConservationReport {
  std::vector<double> samples;
  double c_ref = 0.0;
  double max_abs_dev = 0.0;     // over k = 1..N-1
  double rel_spread = 0.0;      // max_abs_dev / max(|c_ref|, 1e-300)
  double first_node_dev = 0.0;  // |C_0 - c_ref|
  double final_node_dev = 0.0;  // |C_N - c_ref|
};

ConservationReport constancy_report(std::vector<double> samples);

}  // namespace fracvar
