#pragma once

#include <optional>
#include <vector>

#include "autoclose/matrix.hpp"
#include "autoclose/subspace.hpp"

namespace autoclose {

struct RrefResult {
  Matrix canonical;  ///< same shape as the input, zero rows last
  Index rank = 0;
  std::vector<Index> pivot_cols;
};

/// Unique reduced row-echelon form. Throws UnsupportedField over Z.
RrefResult rref(const Matrix& m);

Index rank(const Matrix& m);

/// {x : m x = 0}, canonical; its dimension is cols - rank.
Subspace kernel_basis(const Matrix& m);

/// Solution of a x = b whose coordinates vanish on every free (non-pivot)
/// column of rref(a), or nullopt when the system is inconsistent.
std::optional<Vector> solve_particular(const Matrix& a, const Vector& b);

/// Rank test: rank [a | b] == rank a.
bool is_solvable(const Matrix& a, const Vector& b);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

void require_field(Field field, const char* op);

namespace detail {

struct Echelon {
  std::vector<SparseRow> rows;  ///< fully reduced, leading coefficient 1, sorted by pivot
  std::vector<Index> pivots;
};

/// Canonical reduced row-echelon basis of the row space of `rows`.
Echelon canonical_rref(Field field, Index cols, std::vector<SparseRow> rows);

}  // namespace detail

}  // namespace autoclose
