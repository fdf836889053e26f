#pragma once

#include <span>

#include "canonphase/multiport.hpp"

namespace canonphase {

/// Largest matrix handled by the permanent kernels (cost grows as 2^n).
inline constexpr int kMaxPermanentSize = 20;

/// Ryser's formula with Gray-code subset traversal, O(2^n * n). The empty
/// matrix has permanent 1.
Complex permanent(const ComplexMatrix& m);

/// Permanent of the n x n matrix whose columns are the columns of `m`, column j
/// repeated `multiplicity[j]` times (sum of multiplicities = m.rows()). Uses
/// the grouped Ryser sum, whose cost is prod_j (multiplicity[j] + 1) * n, so
/// repeated columns are far cheaper than expanding them.
Complex permanent_repeated_columns(const ComplexMatrix& m, std::span<const int> multiplicity);

}  // namespace canonphase
