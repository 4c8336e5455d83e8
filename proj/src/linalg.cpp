#include "cpvol/linalg.hpp"

#include <utility>

#include "cpvol/errors.hpp"

namespace cpvol {

std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
  const size_t n = a.size();
  if (b.size() != n) throw InvalidInstance("solve_linear shape mismatch");
  for (auto& row : a)
    if (row.size() != n) throw InvalidInstance("solve_linear expects a square matrix");

  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
    }
    const Rational inv = 1 / a[col][col];
    for (size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

Rational determinant(RatMat a) {
  const size_t n = a.size();
  for (auto& row : a)
    if (row.size() != n) throw InvalidInstance("determinant expects a square matrix");
  Rational det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    const Rational inv = 1 / a[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] * inv;
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

int matrix_rank(RatMat a) {
  if (a.empty()) return 0;
  const size_t rows = a.size(), cols = a[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const Rational inv = 1 / a[rank][col];
    for (size_t j = col; j < cols; ++j) a[rank][j] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (size_t j = col; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace cpvol
