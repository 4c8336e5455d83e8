#pragma once

#include <optional>

#include "cpvol/rational.hpp"

namespace cpvol {

// Exact solve of A x = b by Gaussian elimination with nonzero pivoting.
// Returns nullopt when A is singular.
std::optional<RatVec> solve_linear(RatMat a, RatVec b);

Rational determinant(RatMat a);

// Rank of the row span, exact.
int matrix_rank(RatMat a);

}  // namespace cpvol
