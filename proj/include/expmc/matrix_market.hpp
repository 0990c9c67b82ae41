#pragma once

#include <string>

#include "expmc/sparse_matrix.hpp"

namespace expmc {

/// Reads a MatrixMarket coordinate file (`real` or `pattern`, `symmetric`
/// or `general`). General-format input must be numerically symmetric or it
/// is rejected. Indices are 1-based on disk, 0-based in memory. Parse errors
/// report the offending line number.
SparseSymmetric load_matrix_market(const std::string& path);

/// Writes the matrix in coordinate format, lower triangle, 1-based indices.
/// Unweighted matrices (every stored weight exactly 1) use the `pattern`
/// qualifier. Entries stream straight from the sparse storage.
void write_matrix_market(const SparseSymmetric& a, const std::string& path);

}  // namespace expmc
