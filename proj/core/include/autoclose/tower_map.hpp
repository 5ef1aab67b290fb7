#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "autoclose/tower.hpp"

namespace autoclose {

/// Level data of a continuous map in commuting-diagram form: a non-decreasing
/// index function j -> i_j and level maps T_j : V_{i_j} -> W_j.
class LevelMapProvider {
 public:
  virtual ~LevelMapProvider() = default;

  virtual Level read_level(Level j) const = 0;
  virtual Matrix level_map(Level j) const = 0;
  /// Row r of T_j, for providers that can produce rows without building T_j.
  virtual std::optional<SparseRow> level_row(Level, Index) const { return std::nullopt; }
  /// Level C such that for j >= C the source and target levels are constant,
  /// their connecting maps identities and T_{j+1} = T_j.
  virtual std::optional<Level> stationary_from() const { return std::nullopt; }
};

/// A continuous linear map V -> W between pro-f.d. spaces.
///
/// Copies share the level and kernel caches.
class TowerMap {
 public:
  TowerMap() = default;
  TowerMap(TowerPtr source, TowerPtr target, std::shared_ptr<const LevelMapProvider> provider, bool identity_index,
           std::string name);

  const TowerPtr& source() const;
  const TowerPtr& target() const;
  Field field() const { return source()->field(); }
  const std::string& name() const;

  /// i_j.
  Level read_level(Level j) const;
  /// T_j : V_{i_j} -> W_j.
  const Matrix& level_map(Level j) const;
  SparseRow level_row(Level j, Index r) const;
  /// True after reindex_cofinal (or for maps built with i_j = j).
  bool index_is_identity() const;
  std::optional<Level> stationary_from() const;

  /// ker T_j, cached.
  const Subspace& kernel(Level j) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Per output level j: the highest input level its coordinates read and the
/// coefficient rows of T_j over that level.
struct BandMapSpec {
  std::function<Level(Level)> read_level;
  std::function<Matrix(Level)> coefficients;
  /// Optional: row r of coefficients(j) without building the whole matrix.
  std::function<SparseRow(Level, Index)> row;
  std::optional<Level> stationary_from;
  std::string name = "band map";
};

/// Assembles the TowerMap of a band spec. i_j is the running maximum of the
/// declared read levels; levels that read less are lifted through the source
/// connecting maps. Squares are checked up to `verify_depth` and a
/// MalformedTower is thrown if one fails.
TowerMap towermap_from_band(const BandMapSpec& spec, TowerPtr source, TowerPtr target, Level verify_depth = 4);

/// Band spec for coordinate towers K^i -> K^j whose k-th output (0-based) is
/// rule(k) over input coordinates. i_j is the tight bound: one past the
/// highest input coordinate read by outputs 0..j-1 (at least 1).
BandMapSpec coordinate_band(Field field, std::function<SparseRow(Index)> rule, std::string name);

/// First pair (j', j), j' < j <= depth, where r^j_{j'} T_j != T_{j'} q^{i_j}_{i_{j'}}.
std::optional<std::pair<Level, Level>> verify_squares(const TowerMap& map, Level depth);

/// Same map on the cofinal source levels V_{i_1}, V_{i_2}, ... so that the
/// index function becomes the identity.
TowerMap reindex_cofinal(const TowerMap& map);

// Builtin maps over coordinate_projection towers ------------------------------

/// (p_1 - 2 p_2, p_2 - 2 p_3, ...).
TowerMap example1_map(Field field);
/// (x_1 - x_2, x_2 - x_3, ...).
TowerMap difference_map(Field field);
TowerMap identity_map(Field field);
/// T_j = 0 : K^j -> K^j.
TowerMap zero_map(Field field);

}  // namespace autoclose
