#include "autoclose/subspace.hpp"

#include <string>

#include "autoclose/errors.hpp"
#include "autoclose/linalg.hpp"

namespace autoclose {

Subspace Subspace::zero(Field field, Index ambient_dim) {
  Subspace s;
  s.basis_ = Matrix(field, 0, ambient_dim);
  return s;
}

Subspace Subspace::full(Field field, Index ambient_dim) {
  Subspace s;
  s.basis_ = Matrix::identity(field, ambient_dim);
  s.pivots_.resize(ambient_dim);
  for (Index i = 0; i < ambient_dim; ++i) s.pivots_[i] = i;
  return s;
}

Subspace Subspace::span(const Matrix& generators) {
  require_field(generators.field(), "Subspace::span");
  auto ech = detail::canonical_rref(generators.field(), generators.cols(), generators.row_data());
  Subspace s;
  s.pivots_ = std::move(ech.pivots);
  s.basis_ = Matrix::from_rows(generators.field(), generators.cols(), std::move(ech.rows));
  return s;
}

Subspace Subspace::span(Field field, Index ambient_dim, const std::vector<Vector>& generators) {
  return span(Matrix::from_dense(field, ambient_dim, generators));
}

Vector Subspace::basis_vector(Index k) const { return to_dense(basis_.row(k), field(), ambient_dim()); }

Vector Subspace::reduce(const Vector& v) const {
  if (v.size() != ambient_dim()) throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in ambient dimension " + std::to_string(ambient_dim()));
  Vector out(v);
  for (Index k = 0; k < dim(); ++k) {
    Scalar c = out[pivots_[k]];
    if (c.is_zero()) continue;
    Scalar minus = -c;
    for (const auto& e : basis_.row(k)) out[e.col].add_product(minus, e.value);
  }
  return out;
}

bool Subspace::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  require_compatible(other, "containment");
  for (Index k = 0; k < other.dim(); ++k) {
    if (!contains(other.basis_vector(k))) return false;
  }
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  require_compatible(other, "sum");
  return span(Matrix::stack(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  require_compatible(other, "intersection");
  // Zassenhaus: rref of [[A, A], [B, 0]]; rows with a zero left half span A ∩ B.
  const Index n = ambient_dim();
  std::vector<SparseRow> rows;
  for (const auto& r : basis_.row_data()) {
    SparseRow doubled = r;
    for (const auto& e : r) doubled.push_back({e.col + n, e.value});
    rows.push_back(std::move(doubled));
  }
  for (const auto& r : other.basis_.row_data()) rows.push_back(r);
  auto ech = detail::canonical_rref(field(), 2 * n, std::move(rows));
  std::vector<SparseRow> meet;
  for (std::size_t k = 0; k < ech.rows.size(); ++k) {
    if (ech.pivots[k] < n) continue;
    SparseRow right;
    for (const auto& e : ech.rows[k]) right.push_back({e.col - n, e.value});
    meet.push_back(std::move(right));
  }
  return span(Matrix::from_rows(field(), n, std::move(meet)));
}

void Subspace::require_compatible(const Subspace& other, const char* op) const {
  if (!(field() == other.field())) throw FieldMismatch(std::string("subspace ") + op + " across fields");
  if (ambient_dim() != other.ambient_dim()) {
    throw DimensionMismatch(std::string("subspace ") + op + " in ambient dimensions " + std::to_string(ambient_dim()) + " and " + std::to_string(other.ambient_dim()));
  }
}

Subspace image(const Matrix& a, const Subspace& s) {
  if (a.cols() != s.ambient_dim()) throw DimensionMismatch("image of a subspace of K^" + std::to_string(s.ambient_dim()) + " under a map from K^" + std::to_string(a.cols()));
  if (s.dim() == 0) return Subspace::zero(a.field(), a.rows());
  return Subspace::span(s.basis() * a.transpose());
}

Subspace preimage_subspace(const Matrix& a, const Subspace& s) {
  if (a.rows() != s.ambient_dim()) throw DimensionMismatch("preimage of a subspace of K^" + std::to_string(s.ambient_dim()) + " under a map into K^" + std::to_string(a.rows()));
  if (s.dim() == s.ambient_dim()) return Subspace::full(a.field(), a.cols());
  Subspace annihilator = kernel_basis(s.basis());
  return kernel_basis(annihilator.basis() * a);
}

}  // namespace autoclose
