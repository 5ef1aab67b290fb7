#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "autoclose/scalar.hpp"

namespace autoclose {

using Index = std::size_t;

/// Dense vector. All entries share one field.
using Vector = std::vector<Scalar>;

struct Entry {
  Index col;
  Scalar value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted by column, no explicit zeros.
using SparseRow = std::vector<Entry>;

Vector zero_vector(Field field, Index n);
bool is_zero(const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector scaled(const Vector& v, const Scalar& c);
Vector integer_vector(Field field, std::initializer_list<long> values);

SparseRow to_sparse(const Vector& v);
Vector to_dense(const SparseRow& row, Field field, Index n);
Scalar dot(const SparseRow& row, const Vector& x, Field field);

/// Row-major sparse matrix over a single field.
///
/// Values are immutable once built; every factory validates that entries are
/// in range, sorted and share the matrix field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, Index rows, Index cols);

  static Matrix identity(Field field, Index n);
  static Matrix from_rows(Field field, Index cols, std::vector<SparseRow> rows);
  static Matrix from_dense(Field field, Index cols, const std::vector<Vector>& rows);
  /// Convenience for fixtures: small integer entries, mapped into the field.
  static Matrix from_ints(Field field, std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_ints(Field field, Index cols, const std::vector<std::vector<long>>& rows);
  /// Rows of `top` followed by rows of `bottom`.
  static Matrix stack(const Matrix& top, const Matrix& bottom);

  Field field() const { return field_; }
  Index rows() const { return rows_.size(); }
  Index cols() const { return cols_; }
  Index nonzeros() const;
  bool is_zero() const;

  const SparseRow& row(Index r) const { return rows_.at(r); }
  const std::vector<SparseRow>& row_data() const { return rows_; }
  Scalar at(Index r, Index c) const;

  Vector apply(const Vector& x) const;
  Matrix transpose() const;
  std::vector<Vector> to_dense() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  Index cols_ = 0;
  std::vector<SparseRow> rows_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);
std::ostream& operator<<(std::ostream& os, const Vector& v);

}  // namespace autoclose
