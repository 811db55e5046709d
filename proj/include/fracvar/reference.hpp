#pragma once

#include <vector>

#include "fracvar/dynamics.hpp"
#include "fracvar/fracops.hpp"
#include "fracvar/grid.hpp"
#include "fracvar/model.hpp"

// Independently-coded serial implementations. Tests hold the production
// kernels (which carry OpenMP pragmas and, for the conservation sum, a prefix
// table) to these; the benchmark tool times the pairs against each other.
// Nothing here shares loop structure with the production code.

namespace fracvar::reference {

/// (-alpha)(1 - alpha)...(r - 1 - alpha) / r!, evaluated in closed form as
/// -alpha Gamma(r - alpha) / (Gamma(1 - alpha) Gamma(r + 1)) through lgamma;
/// no recurrence, and no overflow however large r gets. For r >= 1 and
/// alpha < 1 every factor past the first is positive, so the sign is fixed.
double gl_coefficient_closed_form(double alpha, int r);

/// Textbook double loops, straight from the defining sums.
SampledSignal delta_minus(const Trajectory& q, double alpha);
SampledSignal delta_plus(const Trajectory& q, double alpha);

/// Residual assembled directly from the defining sums in one pass per node,
/// without the shared difference kernels.
ELResidual el_residual(const Lagrangian& lagrangian, const Trajectory& q, double alpha);

/// Serial conservation sum: streams over r with a sliding window per output
/// row instead of prefix tables.
std::vector<double> conserved_quantity_streaming(const SampledSignal& f, const SampledSignal& g,
                                                 double alpha);

/// Materialises every A_r via build_shift_matrix and applies it densely.
/// O(N^3); exists to pin the index-free evaluations to the matrix definition.
std::vector<double> conserved_quantity_matrices(const SampledSignal& f, const SampledSignal& g,
                                                double alpha);

}  // namespace fracvar::reference
