#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autoclose/matrix.hpp"
#include "autoclose/subspace.hpp"

namespace autoclose {

/// Tower levels are numbered from 1.
using Level = std::size_t;

/// Deterministic source of the levels of an inverse sequence
/// ... -> V_3 -> V_2 -> V_1.
class LevelProvider {
 public:
  virtual ~LevelProvider() = default;

  virtual Field field() const = 0;
  virtual Index dim(Level i) const = 0;
  /// q_i : V_{i+1} -> V_i as a dim(i) x dim(i+1) matrix. Need not be surjective.
  virtual Matrix connecting(Level i) const = 0;
  /// Row c of the composite q^j_i, for providers that can produce it without
  /// composing (coordinate towers). nullopt means "compose".
  virtual std::optional<SparseRow> composite_row(Level i, Level j, Index c) const;
  virtual bool provides_composite_rows() const { return false; }
  /// Level from which every dim is constant and every connecting map is the identity.
  virtual std::optional<Level> stationary_from() const { return std::nullopt; }
  /// Last level of a finite fixture.
  virtual std::optional<Level> max_level() const { return std::nullopt; }
  virtual std::string describe() const = 0;
};

/// A pro-finite-dimensional space presented by its inverse sequence.
///
/// Levels are materialized lazily and cached; once produced they never change.
/// Materialization is serialized by an internal lock, so concurrent readers
/// are safe.
class Tower {
 public:
  explicit Tower(std::shared_ptr<const LevelProvider> provider);

  Field field() const { return field_; }
  Index dim(Level i) const;
  /// q_i : V_{i+1} -> V_i.
  const Matrix& connecting(Level i) const;
  /// q^j_i = q_i q_{i+1} ... q_{j-1}; the identity when i == j.
  const Matrix& connect(Level i, Level j) const;
  /// Row c of q^j_i without materializing the whole composite when the provider allows.
  SparseRow connect_row(Level i, Level j, Index c) const;
  /// q^j_i v.
  Vector push(Level i, Level j, const Vector& v) const;

  Level explored_depth() const;
  std::optional<Level> stationary_from() const { return provider_->stationary_from(); }
  std::optional<Level> max_level() const { return provider_->max_level(); }
  std::string describe() const { return provider_->describe(); }
  const LevelProvider& provider() const { return *provider_; }

 private:
  void check_level(Level i) const;
  void touch(Level i) const;

  std::shared_ptr<const LevelProvider> provider_;
  Field field_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<Level, Index> dims_;
  mutable std::map<Level, Matrix> connecting_;
  mutable std::map<std::pair<Level, Level>, Matrix> composites_;
  mutable Level explored_ = 0;
};

using TowerPtr = std::shared_ptr<const Tower>;

/// Finite consistent prefix (v_1, ..., v_D) of an element of the inverse limit.
struct TowerVector {
  TowerPtr tower;
  std::vector<Vector> prefix;

  Level depth() const { return prefix.size(); }
};

/// nullopt when q_i(v_{i+1}) = v_i for every covered i, otherwise the least failing i.
/// Throws DimensionMismatch when a prefix entry has the wrong length.
std::optional<Level> check_consistent(const Tower& tower, const std::vector<Vector>& prefix);

/// Pushes v_D (in V_D) down to the consistent prefix (q^D_1 v_D, ..., v_D).
std::vector<Vector> consistent_prefix_from(const Tower& tower, Level depth, const Vector& top);

// Builtin towers ------------------------------------------------------------

/// V_i = K^{dims(i)} with dims non-decreasing; q_i drops the trailing coordinates.
TowerPtr coordinate_tower(Field field, std::function<Index(Level)> dims, std::string name,
                          std::optional<Level> stationary_from = std::nullopt);
/// V_i = K^i, q_i(x_1..x_{i+1}) = (x_1..x_i).
TowerPtr coordinate_projection_tower(Field field);
/// V_i = K^n with identity connecting maps: a finite-dimensional space seen as a tower.
TowerPtr constant_tower(Field field, Index n);
/// Finite fixture: dims[0..L-1], q_matrices[k] = q_{k+1} : V_{k+2} -> V_{k+1}.
TowerPtr explicit_tower(Field field, std::vector<Index> dims, std::vector<Matrix> q_matrices);
/// Tower whose levels come from callbacks.
TowerPtr function_tower(Field field, std::function<Index(Level)> dims, std::function<Matrix(Level)> connecting,
                        std::string name, std::optional<Level> stationary_from = std::nullopt);

/// Outcome of intersecting the pushed-down images of a family of level subspaces.
struct StableImage {
  Subspace subspace;        ///< intersection of q^j_i(S_j) over the examined j
  bool stabilized = false;  ///< unchanged over the confirmation window
  Level ell = 0;            ///< least j attaining the final value
};

/// For S_j <= V_j (j = i..depth, `subspaces[j - i]`), the running intersection
/// of q^j_i(S_j) and whether it stayed constant over `window` further levels.
StableImage stable_images(const Tower& tower, const std::vector<Subspace>& subspaces, Level i, Level depth,
                          Level window = 3);

}  // namespace autoclose
