#include "autoclose/representation.hpp"

#include <cstdlib>
#include <string>

#include "autoclose/errors.hpp"
#include "autoclose/linalg.hpp"
#include "autoclose/subspace.hpp"

namespace autoclose {

namespace {

Matrix matrix_power(const Matrix& a, std::uint64_t e) {
  Matrix result = Matrix::identity(a.field(), a.rows());
  Matrix base = a;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

}  // namespace

Representation::Representation(GroupModel group, Field field, Index dim, std::vector<Matrix> matrices)
    : group_(std::move(group)), field_(field), dim_(dim), matrices_(std::move(matrices)) {
  require_field(field_, "representation");
  const bool table = group_.kind() == GroupModel::Kind::finite_table;
  const std::size_t expected = table ? group_.order() : group_.generator_count();
  if (matrices_.size() != expected) {
    throw DimensionMismatch("representation of " + group_.describe() + " needs " + std::to_string(expected) + " matrices, got " +
                            std::to_string(matrices_.size()));
  }
  for (std::size_t k = 0; k < matrices_.size(); ++k) {
    const Matrix& m = matrices_[k];
    if (!(m.field() == field_)) throw FieldMismatch("representation matrix " + std::to_string(k) + " is over another field");
    if (m.rows() != dim_ || m.cols() != dim_) throw DimensionMismatch("representation matrix " + std::to_string(k) + " is not " + std::to_string(dim_) + "x" + std::to_string(dim_));
    auto inv = inverse(m);
    if (!inv) throw AlgebraError("representation matrix " + std::to_string(k) + " is not invertible");
    inverses_.push_back(std::move(*inv));
  }
  const Matrix id = Matrix::identity(field_, dim_);
  switch (group_.kind()) {
    case GroupModel::Kind::cyclic:
      if (!(matrix_power(matrices_[0], group_.order()) == id)) {
        throw AlgebraError("generator matrix does not satisfy g^" + std::to_string(group_.order()) + " = 1");
      }
      break;
    case GroupModel::Kind::free_abelian:
      for (std::size_t a = 0; a < matrices_.size(); ++a) {
        for (std::size_t b = a + 1; b < matrices_.size(); ++b) {
          if (!(matrices_[a] * matrices_[b] == matrices_[b] * matrices_[a])) {
            throw AlgebraError("generator matrices " + std::to_string(a) + " and " + std::to_string(b) + " do not commute");
          }
        }
      }
      break;
    case GroupModel::Kind::finite_table: {
      const auto& t = group_.table();
      const auto e = static_cast<std::size_t>(group_.identity()[0]);
      if (!(matrices_[e] == Matrix::identity(field_, dim_))) throw AlgebraError("the identity element must act as the identity matrix");
      for (std::size_t x = 0; x < t.size(); ++x) {
        for (std::size_t y = 0; y < t.size(); ++y) {
          if (!(matrices_[x] * matrices_[y] == matrices_[t[x][y]])) {
            throw AlgebraError("matrices violate the group table at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
          }
        }
      }
      break;
    }
    case GroupModel::Kind::free: break;
  }
}

Representation Representation::trivial(GroupModel group, Field field, Index dim) {
  const std::size_t n = group.kind() == GroupModel::Kind::finite_table ? group.order() : group.generator_count();
  std::vector<Matrix> mats(n, Matrix::identity(field, dim));
  return Representation(std::move(group), field, dim, std::move(mats));
}

Matrix Representation::evaluate(const Element& g) const {
  switch (group_.kind()) {
    case GroupModel::Kind::finite_table: return matrices_[static_cast<std::size_t>(g[0])];
    case GroupModel::Kind::cyclic: return matrix_power(matrices_[0], static_cast<std::uint64_t>(g[0]));
    case GroupModel::Kind::free_abelian: {
      Matrix out = Matrix::identity(field_, dim_);
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k] == 0) continue;
        const Matrix& base = g[k] > 0 ? matrices_[k] : inverses_[k];
        out = out * matrix_power(base, static_cast<std::uint64_t>(std::llabs(g[k])));
      }
      return out;
    }
    case GroupModel::Kind::free: {
      if (g.empty()) return Matrix::identity(field_, dim_);
      // Words share prefixes with shorter ball elements, so recurse through the cache.
      Element prefix(g.begin(), g.end() - 1);
      const std::int64_t last = g.back();
      const Matrix& m = last > 0 ? matrices_[static_cast<std::size_t>(last - 1)] : inverses_[static_cast<std::size_t>(-last - 1)];
      return act(prefix) * m;
    }
  }
  return Matrix::identity(field_, dim_);
}

const Matrix& Representation::act(const Element& g) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->acts.find(g); it != cache_->acts.end()) return it->second;
  }
  Matrix m = evaluate(g);
  std::lock_guard lock(cache_->mutex);
  return cache_->acts.emplace(g, std::move(m)).first->second;
}

Subspace fixed_subspace(const Representation& rep) {
  const Matrix id = Matrix::identity(rep.field(), rep.dim());
  if (rep.matrices().empty()) return Subspace::full(rep.field(), rep.dim());
  Matrix stacked = rep.matrices()[0] - id;
  for (std::size_t k = 1; k < rep.matrices().size(); ++k) stacked = Matrix::stack(stacked, rep.matrices()[k] - id);
  return kernel_basis(stacked);
}

}  // namespace autoclose
