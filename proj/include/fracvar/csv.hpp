#pragma once

#include <string>
#include <vector>

#include "fracvar/grid.hpp"
#include "fracvar/noether.hpp"

namespace fracvar {

/// Trajectory file, header `k,t,Q1,...,Qd`, one row per node k = 0..N.
/// Floating-point fields use 17 significant digits, so a write/read round trip
/// reproduces every double bit-for-bit.
void write_trajectory_csv(const std::string& path, const Trajectory& q);
Trajectory read_trajectory_csv(const std::string& path);

/// Conservation file, header `k,t,C`, one row per node k = 0..N.
void write_conservation_csv(const std::string& path, const Grid& grid,
                            const std::vector<double>& samples);
std::vector<double> read_conservation_csv(const std::string& path);

/// Integer matrix dump, one comma-separated row per matrix row, no header.
void write_matrix_csv(const std::string& path, const ShiftMatrix& m);
std::vector<std::vector<int>> read_matrix_csv(const std::string& path);

}  // namespace fracvar
