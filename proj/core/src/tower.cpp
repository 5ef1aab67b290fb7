#include "autoclose/tower.hpp"

#include <string>

#include "autoclose/errors.hpp"

namespace autoclose {

std::optional<SparseRow> LevelProvider::composite_row(Level, Level, Index) const { return std::nullopt; }

Tower::Tower(std::shared_ptr<const LevelProvider> provider) : provider_(std::move(provider)) {
  if (!provider_) throw MalformedTower("tower without a level provider");
  field_ = provider_->field();
}

void Tower::check_level(Level i) const {
  if (i == 0) throw MalformedTower("tower levels start at 1");
  if (auto last = provider_->max_level(); last && i > *last) {
    throw MalformedTower(describe() + " has no level " + std::to_string(i) + " (fixture ends at level " + std::to_string(*last) + ")");
  }
}

void Tower::touch(Level i) const {
  if (i > explored_) explored_ = i;
}

Index Tower::dim(Level i) const {
  check_level(i);
  std::lock_guard lock(mutex_);
  auto it = dims_.find(i);
  if (it != dims_.end()) return it->second;
  Index d = provider_->dim(i);
  dims_.emplace(i, d);
  touch(i);
  return d;
}

const Matrix& Tower::connecting(Level i) const {
  check_level(i + 1);
  std::lock_guard lock(mutex_);
  auto it = connecting_.find(i);
  if (it != connecting_.end()) return it->second;
  Matrix q = provider_->connecting(i);
  if (!(q.field() == field_) || q.rows() != dim(i) || q.cols() != dim(i + 1)) {
    throw MalformedTower(describe() + ": connecting map q_" + std::to_string(i) + " has shape " + std::to_string(q.rows()) + "x" +
                         std::to_string(q.cols()) + ", expected " + std::to_string(dim(i)) + "x" + std::to_string(dim(i + 1)));
  }
  touch(i + 1);
  return connecting_.emplace(i, std::move(q)).first->second;
}

const Matrix& Tower::connect(Level i, Level j) const {
  if (i > j) throw MalformedTower("connect(" + std::to_string(i) + ", " + std::to_string(j) + ") needs i <= j");
  check_level(j);
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(i, j);
  if (auto it = composites_.find(key); it != composites_.end()) return it->second;
  Matrix result;
  if (i == j) {
    result = Matrix::identity(field_, dim(i));
  } else if (dim(i) == 0) {
    result = Matrix(field_, 0, dim(j));
  } else if (provider_->provides_composite_rows()) {
    std::vector<SparseRow> rows;
    rows.reserve(dim(i));
    for (Index c = 0; c < dim(i); ++c) rows.push_back(*provider_->composite_row(i, j, c));
    result = Matrix::from_rows(field_, dim(j), std::move(rows));
    touch(j);
  } else {
    result = connect(i, j - 1) * connecting(j - 1);
  }
  return composites_.emplace(key, std::move(result)).first->second;
}

SparseRow Tower::connect_row(Level i, Level j, Index c) const {
  if (i > j) throw MalformedTower("connect_row needs i <= j");
  check_level(j);
  if (i == j) {
    if (c >= dim(i)) throw DimensionMismatch("coordinate outside level");
    return SparseRow{{c, Scalar::one(field_)}};
  }
  if (auto row = provider_->composite_row(i, j, c)) {
    std::lock_guard lock(mutex_);
    touch(j);
    return *row;
  }
  return connect(i, j).row(c);
}

Vector Tower::push(Level i, Level j, const Vector& v) const {
  if (v.size() != dim(j)) throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " at level " + std::to_string(j) + " of dimension " + std::to_string(dim(j)));
  if (i == j) return v;
  return connect(i, j).apply(v);
}

Level Tower::explored_depth() const {
  std::lock_guard lock(mutex_);
  return explored_;
}

std::optional<Level> check_consistent(const Tower& tower, const std::vector<Vector>& prefix) {
  for (Level i = 1; i <= prefix.size(); ++i) {
    if (prefix[i - 1].size() != tower.dim(i)) {
      throw DimensionMismatch("prefix entry " + std::to_string(i) + " has length " + std::to_string(prefix[i - 1].size()) +
                              ", level dimension is " + std::to_string(tower.dim(i)));
    }
  }
  for (Level i = 1; i < prefix.size(); ++i) {
    if (!(tower.connecting(i).apply(prefix[i]) == prefix[i - 1])) return i;
  }
  return std::nullopt;
}

std::vector<Vector> consistent_prefix_from(const Tower& tower, Level depth, const Vector& top) {
  std::vector<Vector> prefix(depth);
  if (depth == 0) return prefix;
  prefix[depth - 1] = top;
  for (Level i = depth - 1; i >= 1; --i) prefix[i - 1] = tower.connecting(i).apply(prefix[i]);
  return prefix;
}

namespace {

class CoordinateProvider final : public LevelProvider {
 public:
  CoordinateProvider(Field field, std::function<Index(Level)> dims, std::string name, std::optional<Level> stationary)
      : field_(field), dims_(std::move(dims)), name_(std::move(name)), stationary_(stationary) {}

  Field field() const override { return field_; }
  Index dim(Level i) const override { return dims_(i); }
  Matrix connecting(Level i) const override {
    Index lo = dims_(i);
    Index hi = dims_(i + 1);
    if (lo > hi) throw MalformedTower(name_ + ": coordinate tower dimensions must be non-decreasing");
    Matrix id = Matrix::identity(field_, lo);
    std::vector<SparseRow> rows = id.row_data();
    return Matrix::from_rows(field_, hi, std::move(rows));
  }
  std::optional<SparseRow> composite_row(Level, Level, Index c) const override {
    return SparseRow{{c, Scalar::one(field_)}};
  }
  bool provides_composite_rows() const override { return true; }
  std::optional<Level> stationary_from() const override { return stationary_; }
  std::string describe() const override { return name_; }

 private:
  Field field_;
  std::function<Index(Level)> dims_;
  std::string name_;
  std::optional<Level> stationary_;
};

class ExplicitProvider final : public LevelProvider {
 public:
  ExplicitProvider(Field field, std::vector<Index> dims, std::vector<Matrix> q)
      : field_(field), dims_(std::move(dims)), q_(std::move(q)) {
    if (dims_.empty()) throw MalformedTower("explicit tower needs at least one level");
    if (q_.size() + 1 != dims_.size()) {
      throw MalformedTower("explicit tower with " + std::to_string(dims_.size()) + " levels needs " + std::to_string(dims_.size() - 1) +
                           " connecting matrices, got " + std::to_string(q_.size()));
    }
    for (std::size_t k = 0; k < q_.size(); ++k) {
      if (q_[k].rows() != dims_[k] || q_[k].cols() != dims_[k + 1]) {
        throw MalformedTower("q_" + std::to_string(k + 1) + " must be " + std::to_string(dims_[k]) + "x" + std::to_string(dims_[k + 1]));
      }
      if (!(q_[k].field() == field_)) throw FieldMismatch("explicit tower connecting map over the wrong field");
    }
  }

  Field field() const override { return field_; }
  Index dim(Level i) const override { return dims_.at(i - 1); }
  Matrix connecting(Level i) const override { return q_.at(i - 1); }
  std::optional<Level> max_level() const override { return dims_.size(); }
  std::string describe() const override { return "explicit tower (" + std::to_string(dims_.size()) + " levels)"; }

 private:
  Field field_;
  std::vector<Index> dims_;
  std::vector<Matrix> q_;
};

class FunctionProvider final : public LevelProvider {
 public:
  FunctionProvider(Field field, std::function<Index(Level)> dims, std::function<Matrix(Level)> connecting, std::string name,
                   std::optional<Level> stationary)
      : field_(field), dims_(std::move(dims)), connecting_(std::move(connecting)), name_(std::move(name)), stationary_(stationary) {}

  Field field() const override { return field_; }
  Index dim(Level i) const override { return dims_(i); }
  Matrix connecting(Level i) const override { return connecting_(i); }
  std::optional<Level> stationary_from() const override { return stationary_; }
  std::string describe() const override { return name_; }

 private:
  Field field_;
  std::function<Index(Level)> dims_;
  std::function<Matrix(Level)> connecting_;
  std::string name_;
  std::optional<Level> stationary_;
};

}  // namespace

TowerPtr coordinate_tower(Field field, std::function<Index(Level)> dims, std::string name, std::optional<Level> stationary_from) {
  return std::make_shared<Tower>(std::make_shared<CoordinateProvider>(field, std::move(dims), std::move(name), stationary_from));
}

TowerPtr coordinate_projection_tower(Field field) {
  return coordinate_tower(field, [](Level i) { return Index{i}; }, "coordinate_projection");
}

TowerPtr constant_tower(Field field, Index n) {
  return coordinate_tower(field, [n](Level) { return n; }, "constant tower K^" + std::to_string(n), Level{1});
}

TowerPtr explicit_tower(Field field, std::vector<Index> dims, std::vector<Matrix> q_matrices) {
  return std::make_shared<Tower>(std::make_shared<ExplicitProvider>(field, std::move(dims), std::move(q_matrices)));
}

TowerPtr function_tower(Field field, std::function<Index(Level)> dims, std::function<Matrix(Level)> connecting, std::string name,
                        std::optional<Level> stationary_from) {
  return std::make_shared<Tower>(
      std::make_shared<FunctionProvider>(field, std::move(dims), std::move(connecting), std::move(name), stationary_from));
}

StableImage stable_images(const Tower& tower, const std::vector<Subspace>& subspaces, Level i, Level depth, Level window) {
  if (depth < i) throw MalformedTower("stable_images needs depth >= i");
  if (subspaces.size() < depth - i + 1) throw DimensionMismatch("stable_images needs one subspace per level i..depth");
  StableImage out;
  for (Level j = i; j <= depth; ++j) {
    const Subspace& s = subspaces[j - i];
    if (s.ambient_dim() != tower.dim(j)) throw DimensionMismatch("subspace at level " + std::to_string(j) + " has the wrong ambient dimension");
    Subspace pushed = image(tower.connect(i, j), s);
    if (j == i) {
      out.subspace = std::move(pushed);
      out.ell = i;
      continue;
    }
    Subspace next = out.subspace.intersect(pushed);
    if (!(next == out.subspace)) {
      out.subspace = std::move(next);
      out.ell = j;
    }
  }
  out.stabilized = depth - out.ell >= window;
  return out;
}

}  // namespace autoclose
