#pragma once

#include <vector>

#include "autoclose/matrix.hpp"

namespace autoclose {

/// A subspace of K^n held by its reduced row-echelon basis.
///
/// The basis is canonical (leading ones, zeros above and below every pivot), so
/// two Subspace values compare equal exactly when they are the same subspace.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Field field, Index ambient_dim);
  static Subspace full(Field field, Index ambient_dim);
  /// Row space of `generators`.
  static Subspace span(const Matrix& generators);
  static Subspace span(Field field, Index ambient_dim, const std::vector<Vector>& generators);

  Field field() const { return basis_.field(); }
  Index ambient_dim() const { return basis_.cols(); }
  Index dim() const { return basis_.rows(); }

  const Matrix& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  /// Basis vector k as a dense vector.
  Vector basis_vector(Index k) const;

  /// Remainder of v after clearing every pivot coordinate; zero iff v lies in the subspace.
  Vector reduce(const Vector& v) const;
  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;

  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis_ == b.basis_;
  }

 private:
  void require_compatible(const Subspace& other, const char* op) const;

  Matrix basis_;
  std::vector<Index> pivots_;
};

/// a(S) for a matrix a : K^n -> K^m and S <= K^n.
Subspace image(const Matrix& a, const Subspace& s);

/// {x : a x in S}.
Subspace preimage_subspace(const Matrix& a, const Subspace& s);

}  // namespace autoclose
