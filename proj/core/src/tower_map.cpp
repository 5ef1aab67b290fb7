#include "autoclose/tower_map.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "autoclose/errors.hpp"
#include "autoclose/linalg.hpp"

namespace autoclose {

struct TowerMap::State {
  TowerPtr source;
  TowerPtr target;
  std::shared_ptr<const LevelMapProvider> provider;
  bool identity_index = false;
  std::string name;

  std::recursive_mutex mutex;
  std::map<Level, Level> read_levels;
  std::map<Level, Matrix> level_maps;
  std::map<Level, Subspace> kernels;
};

TowerMap::TowerMap(TowerPtr source, TowerPtr target, std::shared_ptr<const LevelMapProvider> provider, bool identity_index,
                   std::string name)
    : state_(std::make_shared<State>()) {
  if (!source || !target || !provider) throw MalformedTower("tower map needs a source, a target and level data");
  if (!(source->field() == target->field())) throw FieldMismatch("tower map between towers over different fields");
  state_->source = std::move(source);
  state_->target = std::move(target);
  state_->provider = std::move(provider);
  state_->identity_index = identity_index;
  state_->name = std::move(name);
}

const TowerPtr& TowerMap::source() const { return state_->source; }
const TowerPtr& TowerMap::target() const { return state_->target; }
const std::string& TowerMap::name() const { return state_->name; }
bool TowerMap::index_is_identity() const { return state_->identity_index; }
std::optional<Level> TowerMap::stationary_from() const { return state_->provider->stationary_from(); }

Level TowerMap::read_level(Level j) const {
  if (j == 0) throw MalformedTower("tower map levels start at 1");
  std::lock_guard lock(state_->mutex);
  if (auto it = state_->read_levels.find(j); it != state_->read_levels.end()) return it->second;
  Level i = state_->provider->read_level(j);
  if (j > 1 && i < read_level(j - 1)) throw MalformedTower(name() + ": index function decreases at level " + std::to_string(j));
  state_->read_levels.emplace(j, i);
  return i;
}

const Matrix& TowerMap::level_map(Level j) const {
  std::lock_guard lock(state_->mutex);
  if (auto it = state_->level_maps.find(j); it != state_->level_maps.end()) return it->second;
  Matrix t = state_->provider->level_map(j);
  Level i = read_level(j);
  if (!(t.field() == field()) || t.rows() != target()->dim(j) || t.cols() != source()->dim(i)) {
    throw MalformedTower(name() + ": T_" + std::to_string(j) + " has shape " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                         ", expected " + std::to_string(target()->dim(j)) + "x" + std::to_string(source()->dim(i)));
  }
  return state_->level_maps.emplace(j, std::move(t)).first->second;
}

SparseRow TowerMap::level_row(Level j, Index r) const {
  {
    std::lock_guard lock(state_->mutex);
    if (auto it = state_->level_maps.find(j); it != state_->level_maps.end()) return it->second.row(r);
  }
  if (auto row = state_->provider->level_row(j, r)) return *row;
  return level_map(j).row(r);
}

const Subspace& TowerMap::kernel(Level j) const {
  std::lock_guard lock(state_->mutex);
  if (auto it = state_->kernels.find(j); it != state_->kernels.end()) return it->second;
  Subspace k = kernel_basis(level_map(j));
  return state_->kernels.emplace(j, std::move(k)).first->second;
}

namespace {

class BandProvider final : public LevelMapProvider {
 public:
  BandProvider(BandMapSpec spec, TowerPtr source) : spec_(std::move(spec)), source_(std::move(source)) {}

  Level read_level(Level j) const override {
    std::lock_guard lock(mutex_);
    while (cumulative_.size() < j) {
      Level k = cumulative_.size() + 1;
      Level declared = spec_.read_level(k);
      if (declared == 0) throw MalformedTower(spec_.name + ": read level must be at least 1");
      declared_.push_back(declared);
      cumulative_.push_back(cumulative_.empty() ? declared : std::max(cumulative_.back(), declared));
    }
    return cumulative_[j - 1];
  }

  Matrix level_map(Level j) const override {
    Level i = read_level(j);
    Level declared = declared_level(j);
    Matrix coeffs = spec_.coefficients(j);
    if (coeffs.cols() != source_->dim(declared)) {
      throw MalformedTower(spec_.name + ": level " + std::to_string(j) + " coefficients have " + std::to_string(coeffs.cols()) +
                           " columns but V_" + std::to_string(declared) + " has dimension " + std::to_string(source_->dim(declared)));
    }
    if (declared == i) return coeffs;
    return coeffs * source_->connect(declared, i);
  }

  std::optional<SparseRow> level_row(Level j, Index r) const override {
    if (!spec_.row) return std::nullopt;
    if (declared_level(j) != read_level(j)) return std::nullopt;
    return spec_.row(j, r);
  }

  std::optional<Level> stationary_from() const override { return spec_.stationary_from; }

 private:
  Level declared_level(Level j) const {
    read_level(j);
    std::lock_guard lock(mutex_);
    return declared_[j - 1];
  }

  BandMapSpec spec_;
  TowerPtr source_;
  mutable std::mutex mutex_;
  mutable std::vector<Level> declared_;
  mutable std::vector<Level> cumulative_;
};

// r_1 * row_1 + ... with duplicate columns merged and zeros dropped.
SparseRow normalize_row(std::vector<Entry> raw) {
  std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  SparseRow out;
  for (auto& e : raw) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().value += e.value;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const Entry& e) { return e.value.is_zero(); });
  return out;
}

class ReindexedSource final : public LevelProvider {
 public:
  explicit ReindexedSource(TowerMap map) : map_(std::move(map)) {}

  Field field() const override { return map_.source()->field(); }
  Index dim(Level j) const override { return map_.source()->dim(map_.read_level(j)); }
  Matrix connecting(Level j) const override { return map_.source()->connect(map_.read_level(j), map_.read_level(j + 1)); }
  std::optional<SparseRow> composite_row(Level i, Level j, Index c) const override {
    return map_.source()->connect_row(map_.read_level(i), map_.read_level(j), c);
  }
  bool provides_composite_rows() const override { return map_.source()->provider().provides_composite_rows(); }
  std::optional<Level> stationary_from() const override { return map_.stationary_from(); }
  std::optional<Level> max_level() const override {
    auto last = map_.source()->max_level();
    if (!last) return std::nullopt;
    Level j = 0;
    while (map_.read_level(j + 1) <= *last) {
      ++j;
      if (auto tlast = map_.target()->max_level(); tlast && j >= *tlast) break;
    }
    return j;
  }
  std::string describe() const override { return "cofinal levels of " + map_.source()->describe(); }

 private:
  TowerMap map_;
};

class ReindexedMap final : public LevelMapProvider {
 public:
  explicit ReindexedMap(TowerMap map) : map_(std::move(map)) {}

  Level read_level(Level j) const override { return j; }
  Matrix level_map(Level j) const override { return map_.level_map(j); }
  std::optional<SparseRow> level_row(Level j, Index r) const override { return map_.level_row(j, r); }
  std::optional<Level> stationary_from() const override { return map_.stationary_from(); }

 private:
  TowerMap map_;
};

}  // namespace

TowerMap towermap_from_band(const BandMapSpec& spec, TowerPtr source, TowerPtr target, Level verify_depth) {
  if (!spec.read_level || !spec.coefficients) throw MalformedTower(spec.name + ": band spec needs read levels and coefficients");
  auto provider = std::make_shared<BandProvider>(spec, source);
  TowerMap map(std::move(source), std::move(target), provider, false, spec.name);
  if (verify_depth > 0) {
    if (auto bad = verify_squares(map, verify_depth)) {
      throw MalformedTower(spec.name + ": square (" + std::to_string(bad->first) + ", " + std::to_string(bad->second) + ") does not commute");
    }
  }
  return map;
}

BandMapSpec coordinate_band(Field field, std::function<SparseRow(Index)> rule, std::string name) {
  struct Cache {
    std::function<SparseRow(Index)> rule;
    std::mutex mutex;
    std::vector<SparseRow> rows;
    std::vector<Level> tight;  // one past the highest coordinate read by outputs < k

    const SparseRow& row(Index k) {
      std::lock_guard lock(mutex);
      while (rows.size() <= k) {
        SparseRow r = rule(rows.size());
        Level reach = tight.empty() ? 1 : tight.back();
        if (!r.empty()) reach = std::max<Level>(reach, r.back().col + 1);
        rows.push_back(std::move(r));
        tight.push_back(reach);
      }
      return rows[k];
    }
    Level read(Level j) {
      row(j - 1);
      std::lock_guard lock(mutex);
      return tight[j - 1];
    }
  };
  auto cache = std::make_shared<Cache>();
  cache->rule = std::move(rule);

  BandMapSpec spec;
  spec.name = std::move(name);
  spec.read_level = [cache](Level j) { return cache->read(j); };
  spec.coefficients = [cache, field](Level j) {
    Level cols = cache->read(j);
    std::vector<SparseRow> rows;
    for (Index k = 0; k < j; ++k) rows.push_back(cache->row(k));
    return Matrix::from_rows(field, cols, std::move(rows));
  };
  spec.row = [cache](Level, Index r) { return cache->row(r); };
  return spec;
}

std::optional<std::pair<Level, Level>> verify_squares(const TowerMap& map, Level depth) {
  const Tower& src = *map.source();
  const Tower& tgt = *map.target();
  for (Level j = 2; j <= depth; ++j) {
    const Level ij = map.read_level(j);
    for (Level jp = 1; jp < j; ++jp) {
      const Level ijp = map.read_level(jp);
      for (Index k = 0; k < tgt.dim(jp); ++k) {
        std::vector<Entry> lhs;
        for (const auto& r : tgt.connect_row(jp, j, k)) {
          for (const auto& e : map.level_row(j, r.col)) lhs.push_back({e.col, r.value * e.value});
        }
        std::vector<Entry> rhs;
        for (const auto& e : map.level_row(jp, k)) {
          for (const auto& q : src.connect_row(ijp, ij, e.col)) rhs.push_back({q.col, e.value * q.value});
        }
        if (!(normalize_row(std::move(lhs)) == normalize_row(std::move(rhs)))) return std::make_pair(jp, j);
      }
    }
  }
  return std::nullopt;
}

TowerMap reindex_cofinal(const TowerMap& map) {
  if (map.index_is_identity()) return map;
  auto source = std::make_shared<Tower>(std::make_shared<ReindexedSource>(map));
  return TowerMap(source, map.target(), std::make_shared<ReindexedMap>(map), true, map.name());
}

namespace {

TowerMap coordinate_builtin(Field field, std::function<SparseRow(Index)> rule, std::string name) {
  auto spec = coordinate_band(field, std::move(rule), std::move(name));
  return towermap_from_band(spec, coordinate_projection_tower(field), coordinate_projection_tower(field), 4);
}

}  // namespace

TowerMap example1_map(Field field) {
  return coordinate_builtin(
      field, [field](Index k) { return SparseRow{{k, Scalar::one(field)}, {k + 1, Scalar(field, -2L)}}; }, "example1");
}

TowerMap difference_map(Field field) {
  return coordinate_builtin(
      field, [field](Index k) { return SparseRow{{k, Scalar::one(field)}, {k + 1, -Scalar::one(field)}}; }, "difference_map");
}

TowerMap identity_map(Field field) {
  return coordinate_builtin(field, [field](Index k) { return SparseRow{{k, Scalar::one(field)}}; }, "identity");
}

TowerMap zero_map(Field field) {
  BandMapSpec spec;
  spec.name = "zero_map";
  spec.read_level = [](Level j) { return j; };
  spec.coefficients = [field](Level j) { return Matrix(field, j, j); };
  spec.row = [](Level, Index) { return SparseRow{}; };
  return towermap_from_band(spec, coordinate_projection_tower(field), coordinate_projection_tower(field), 4);
}

}  // namespace autoclose
