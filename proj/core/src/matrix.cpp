#include "autoclose/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "accumulator.hpp"
#include "autoclose/errors.hpp"

namespace autoclose {

Vector zero_vector(Field field, Index n) { return Vector(n, Scalar(field)); }

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector addition of lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  Vector out(a);
  for (Index i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector subtraction of lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  Vector out(a);
  for (Index i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Vector scaled(const Vector& v, const Scalar& c) {
  Vector out(v);
  for (auto& s : out) s *= c;
  return out;
}

Vector integer_vector(Field field, std::initializer_list<long> values) {
  Vector out;
  out.reserve(values.size());
  for (long v : values) out.emplace_back(field, v);
  return out;
}

SparseRow to_sparse(const Vector& v) {
  SparseRow row;
  for (Index i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) row.push_back({i, v[i]});
  }
  return row;
}

Vector to_dense(const SparseRow& row, Field field, Index n) {
  Vector out = zero_vector(field, n);
  for (const auto& e : row) out.at(e.col) = e.value;
  return out;
}

Scalar dot(const SparseRow& row, const Vector& x, Field field) {
  Scalar acc(field);
  for (const auto& e : row) acc.add_product(e.value, x[e.col]);
  return acc;
}

Matrix::Matrix(Field field, Index rows, Index cols) : field_(field), cols_(cols), rows_(rows) {}

Matrix Matrix::identity(Field field, Index n) {
  Matrix m(field, n, n);
  for (Index i = 0; i < n; ++i) m.rows_[i].push_back({i, Scalar::one(field)});
  return m;
}

Matrix Matrix::from_rows(Field field, Index cols, std::vector<SparseRow> rows) {
  for (Index r = 0; r < rows.size(); ++r) {
    auto& row = rows[r];
    for (Index k = 0; k < row.size(); ++k) {
      if (row[k].col >= cols) throw DimensionMismatch("entry column " + std::to_string(row[k].col) + " outside " + std::to_string(cols) + " columns");
      if (k > 0 && row[k - 1].col >= row[k].col) throw DimensionMismatch("row " + std::to_string(r) + " is not strictly sorted");
      if (!(row[k].value.field() == field)) throw FieldMismatch("matrix over " + field.name() + " given entry in " + row[k].value.field().name());
    }
    std::erase_if(row, [](const Entry& e) { return e.value.is_zero(); });
  }
  Matrix m;
  m.field_ = field;
  m.cols_ = cols;
  m.rows_ = std::move(rows);
  return m;
}

Matrix Matrix::from_dense(Field field, Index cols, const std::vector<Vector>& rows) {
  std::vector<SparseRow> sparse;
  sparse.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionMismatch("dense row of length " + std::to_string(r.size()) + ", expected " + std::to_string(cols));
    for (const auto& s : r) {
      if (!(s.field() == field)) throw FieldMismatch("matrix over " + field.name() + " given entry in " + s.field().name());
    }
    sparse.push_back(to_sparse(r));
  }
  return from_rows(field, cols, std::move(sparse));
}

Matrix Matrix::from_ints(Field field, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<long>> data;
  for (const auto& r : rows) data.emplace_back(r);
  Index cols = data.empty() ? 0 : data.front().size();
  return from_ints(field, cols, data);
}

Matrix Matrix::from_ints(Field field, Index cols, const std::vector<std::vector<long>>& rows) {
  std::vector<Vector> dense;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.emplace_back(field, x);
    dense.push_back(std::move(v));
  }
  return from_dense(field, cols, dense);
}

Matrix Matrix::stack(const Matrix& top, const Matrix& bottom) {
  if (!(top.field_ == bottom.field_)) throw FieldMismatch("stacking " + top.field_.name() + " over " + bottom.field_.name());
  if (top.cols_ != bottom.cols_) throw DimensionMismatch("stacking matrices with " + std::to_string(top.cols_) + " and " + std::to_string(bottom.cols_) + " columns");
  Matrix m(top);
  m.rows_.insert(m.rows_.end(), bottom.rows_.begin(), bottom.rows_.end());
  return m;
}

Index Matrix::nonzeros() const {
  Index n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

bool Matrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const SparseRow& r) { return r.empty(); });
}

Scalar Matrix::at(Index r, Index c) const {
  if (c >= cols_) throw DimensionMismatch("column index out of range");
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, Index col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->value;
  return Scalar(field_);
}

Vector Matrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("applying " + std::to_string(rows()) + "x" + std::to_string(cols_) + " matrix to vector of length " + std::to_string(x.size()));
  Vector out;
  out.reserve(rows());
  for (const auto& r : rows_) out.push_back(dot(r, x, field_));
  return out;
}

Matrix Matrix::transpose() const {
  std::vector<SparseRow> t(cols_);
  for (Index r = 0; r < rows(); ++r) {
    for (const auto& e : rows_[r]) t[e.col].push_back({r, e.value});
  }
  Matrix m;
  m.field_ = field_;
  m.cols_ = rows();
  m.rows_ = std::move(t);
  return m;
}

std::vector<Vector> Matrix::to_dense() const {
  std::vector<Vector> out;
  out.reserve(rows());
  for (const auto& r : rows_) out.push_back(autoclose::to_dense(r, field_, cols_));
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatch("product of " + a.field_.name() + " and " + b.field_.name() + " matrices");
  if (a.cols_ != b.rows()) throw DimensionMismatch("product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols_) + " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols_));
  Matrix m(a.field_, a.rows(), b.cols_);
  detail::Accumulator acc(a.field_, b.cols_);
  for (Index r = 0; r < a.rows(); ++r) {
    for (const auto& e : a.rows_[r]) acc.add_row(b.rows_[e.col], e.value);
    m.rows_[r] = acc.take();
  }
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatch("difference of " + a.field_.name() + " and " + b.field_.name() + " matrices");
  if (a.rows() != b.rows() || a.cols_ != b.cols_) throw DimensionMismatch("difference of differently shaped matrices");
  Matrix m(a.field_, a.rows(), a.cols_);
  detail::Accumulator acc(a.field_, a.cols_);
  Scalar minus_one = -Scalar::one(a.field_);
  for (Index r = 0; r < a.rows(); ++r) {
    for (const auto& e : a.rows_[r]) acc.add(e.col, e.value);
    acc.add_row(b.rows_[r], minus_one);
    m.rows_[r] = acc.take();
  }
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[";
  for (Index r = 0; r < m.rows(); ++r) {
    os << (r ? ", " : "") << "[";
    for (Index c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m.at(r, c);
    os << "]";
  }
  return os << "]";
}

std::ostream& operator<<(std::ostream& os, const Vector& v) {
  os << "(";
  for (Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os << ")";
}

}  // namespace autoclose
