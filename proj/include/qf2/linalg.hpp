#pragma once

#include <vector>

#include "qf2/field.hpp"

namespace qf2::linalg {

using Vector = std::vector<Element>;
using Matrix = std::vector<Vector>;  // row-major

/// Basis of { x : M x = 0 } for an rows x cols matrix.
std::vector<Vector> kernel(const Matrix& m, int cols, unsigned k);
/// Indices of a maximal linearly independent subset of the given vectors, chosen
/// greedily in order.
std::vector<int> independent_subset(const std::vector<Vector>& vectors, unsigned k);
int rank(const std::vector<Vector>& vectors, unsigned k);

}  // namespace qf2::linalg
