#include "autoclose/cohomology.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "autoclose/errors.hpp"
#include "autoclose/linalg.hpp"

namespace autoclose {

namespace {

constexpr Index kMaxLevelDim = Index{1} << 40;

Index checked_power(Index base, std::size_t exp, Index factor) {
  Index out = factor;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && out > kMaxLevelDim / base) throw DimensionMismatch("cochain level dimension overflows");
    out *= base;
  }
  return out;
}

SparseRow merge_entries(std::vector<Entry> raw) {
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

}  // namespace

// Immutable part shared with the tower providers; the caches below hold the
// providers, so the providers must not point back at them.
struct BarCore {
  explicit BarCore(Representation r) : rep(std::move(r)), balls(rep.group()) {}

  Representation rep;
  Balls balls;

  Field field() const { return rep.field(); }
  Index cochain_dim(std::size_t degree, Level radius) const { return checked_power(balls.size(radius), degree, dim()); }
  Index dim() const { return rep.dim(); }
  Level read_level(Level n) const { return rep.group().is_finite() ? n : 2 * n; }

  std::size_t encode(const std::vector<std::size_t>& tuple, std::size_t begin, std::size_t end, std::size_t base) const {
    std::size_t k = 0;
    for (std::size_t i = begin; i < end; ++i) k = k * base + tuple[i];
    return k;
  }

  std::vector<std::size_t> decode(std::size_t degree, std::size_t base, std::size_t k) const {
    std::vector<std::size_t> tuple(degree);
    for (std::size_t i = degree; i-- > 0;) {
      tuple[i] = k % base;
      k /= base;
    }
    return tuple;
  }

  // Row of the coboundary d_p at tuple `t` (ball positions), component `comp`,
  // over source coordinates on B_m^{p-1}.
  SparseRow coboundary_row(std::size_t p, const std::vector<std::size_t>& t, Index comp, Level m) const {
    const Index d = dim();
    const std::size_t base = balls.size(m);
    const Field f = rep.field();
    std::vector<Entry> raw;
    const Matrix& act = rep.act(balls.element(t[0]));
    const std::size_t head = encode(t, 1, p, base);
    for (const auto& e : act.row(comp)) raw.push_back({head * d + e.col, e.value});
    std::vector<std::size_t> merged(p > 0 ? p - 1 : 0);
    for (std::size_t i = 1; i < p; ++i) {
      // f(g_1..g_i g_{i+1}..g_p)
      for (std::size_t k = 0; k + 1 < i; ++k) merged[k] = t[k];
      const Element prod = rep.group().multiply(balls.element(t[i - 1]), balls.element(t[i]));
      const std::size_t pos = balls.index_of(prod, m);
      if (pos == Balls::npos) throw MalformedTower("product leaves the source ball");
      merged[i - 1] = pos;
      for (std::size_t k = i + 1; k < p; ++k) merged[k - 1] = t[k];
      raw.push_back({encode(merged, 0, p - 1, base) * d + comp, Scalar(f, i % 2 == 0 ? 1L : -1L)});
    }
    raw.push_back({encode(t, 0, p - 1, base) * d + comp, Scalar(f, p % 2 == 0 ? 1L : -1L)});
    return merge_entries(std::move(raw));
  }

  SparseRow row(std::size_t p, Level radius, std::size_t tuple_index, Index comp) const {
    return coboundary_row(p, decode(p, balls.size(radius), tuple_index), comp, read_level(radius));
  }
};

namespace {

class CochainProvider final : public LevelProvider {
 public:
  CochainProvider(std::shared_ptr<const BarCore> core, std::size_t degree) : core_(std::move(core)), degree_(degree) {}

  Field field() const override { return core_->field(); }
  Index dim(Level n) const override { return core_->cochain_dim(degree_, n); }
  Matrix connecting(Level n) const override {
    std::vector<SparseRow> rows;
    rows.reserve(dim(n));
    for (Index c = 0; c < dim(n); ++c) rows.push_back(*composite_row(n, n + 1, c));
    return Matrix::from_rows(field(), dim(n + 1), std::move(rows));
  }
  std::optional<SparseRow> composite_row(Level i, Level j, Index c) const override {
    const Index d = core_->dim();
    const std::size_t big = core_->balls.size(j);
    auto tuple = core_->decode(degree_, core_->balls.size(i), c / d);
    std::size_t k = 0;
    for (auto t : tuple) k = k * big + t;
    return SparseRow{{k * d + c % d, Scalar::one(field())}};
  }
  bool provides_composite_rows() const override { return true; }
  std::optional<Level> stationary_from() const override {
    if (degree_ == 0 || core_->rep.group().is_finite()) return Level{1};
    return std::nullopt;
  }
  std::string describe() const override {
    return "C^" + std::to_string(degree_) + "(" + core_->rep.group().describe() + ", K^" + std::to_string(core_->dim()) + ")";
  }

 private:
  std::shared_ptr<const BarCore> core_;
  std::size_t degree_;
};

class CoboundaryProvider final : public LevelMapProvider {
 public:
  CoboundaryProvider(std::shared_ptr<const BarCore> core, std::size_t degree, TowerPtr source, TowerPtr target)
      : core_(std::move(core)), degree_(degree), source_(std::move(source)), target_(std::move(target)) {}

  Level read_level(Level j) const override { return core_->read_level(j); }
  Matrix level_map(Level j) const override {
    const Index rows = target_->dim(j);
    std::vector<SparseRow> out;
    out.reserve(rows);
    for (Index r = 0; r < rows; ++r) out.push_back(*level_row(j, r));
    return Matrix::from_rows(core_->field(), source_->dim(read_level(j)), std::move(out));
  }
  std::optional<SparseRow> level_row(Level j, Index r) const override {
    const Index d = core_->dim();
    return core_->row(degree_, j, r / d, r % d);
  }
  std::optional<Level> stationary_from() const override {
    if (core_->rep.group().is_finite()) return Level{1};
    return std::nullopt;
  }

 private:
  std::shared_ptr<const BarCore> core_;
  std::size_t degree_;
  TowerPtr source_;
  TowerPtr target_;
};

}  // namespace

struct BarComplex::State {
  explicit State(Representation r) : core(std::make_shared<const BarCore>(std::move(r))) {}

  std::shared_ptr<const BarCore> core;
  std::mutex mutex;
  std::map<std::size_t, TowerPtr> towers;
  std::map<std::size_t, TowerMap> maps;
  std::map<std::size_t, TowerMap> relabeled;
};

BarComplex::BarComplex(Representation rep) : state_(std::make_shared<State>(std::move(rep))) {}

const Representation& BarComplex::representation() const { return state_->core->rep; }
const GroupModel& BarComplex::group() const { return state_->core->rep.group(); }
const Balls& BarComplex::balls() const { return state_->core->balls; }
Field BarComplex::field() const { return state_->core->field(); }
Level BarComplex::read_level(Level n) const { return state_->core->read_level(n); }
Index BarComplex::cochain_dim(std::size_t degree, Level radius) const { return state_->core->cochain_dim(degree, radius); }

std::vector<std::size_t> BarComplex::decode_tuple(std::size_t degree, Level radius, std::size_t k) const {
  return state_->core->decode(degree, state_->core->balls.size(radius), k);
}

SparseRow BarComplex::row(std::size_t degree, Level radius, std::size_t tuple_index, Index comp) const {
  return state_->core->row(degree, radius, tuple_index, comp);
}

TowerPtr BarComplex::cochain_tower(std::size_t degree) const {
  std::lock_guard lock(state_->mutex);
  if (auto it = state_->towers.find(degree); it != state_->towers.end()) return it->second;
  auto provider = std::make_shared<CochainProvider>(state_->core, degree);
  auto tower = std::make_shared<const Tower>(provider);
  state_->towers.emplace(degree, tower);
  return tower;
}

TowerMap BarComplex::coboundary(std::size_t degree) const {
  if (degree == 0) throw MalformedTower("coboundary degree starts at 1");
  {
    std::lock_guard lock(state_->mutex);
    if (auto it = state_->maps.find(degree); it != state_->maps.end()) return it->second;
  }
  TowerPtr source = cochain_tower(degree - 1);
  TowerPtr target = cochain_tower(degree);
  auto provider = std::make_shared<CoboundaryProvider>(state_->core, degree, source, target);
  TowerMap map(source, target, provider, group().is_finite(), "d_" + std::to_string(degree));
  std::lock_guard lock(state_->mutex);
  return state_->maps.emplace(degree, map).first->second;
}

TowerMap BarComplex::relabeled_coboundary(std::size_t degree) const {
  TowerMap base = coboundary(degree);
  std::lock_guard lock(state_->mutex);
  if (auto it = state_->relabeled.find(degree); it != state_->relabeled.end()) return it->second;
  return state_->relabeled.emplace(degree, reindex_cofinal(base)).first->second;
}

Vector BarComplex::value(const CochainPrefix& f, const std::vector<std::size_t>& tuple) const {
  const Index d = state_->core->dim();
  const std::size_t k = state_->core->encode(tuple, 0, tuple.size(), state_->core->balls.size(f.radius));
  return Vector(f.values.begin() + static_cast<std::ptrdiff_t>(k * d), f.values.begin() + static_cast<std::ptrdiff_t>((k + 1) * d));
}

CochainPrefix BarComplex::restrict(const CochainPrefix& f, Level radius) const {
  if (radius > f.radius) throw DimensionMismatch("cannot restrict a cochain to a larger ball");
  if (f.values.size() != cochain_dim(f.degree, f.radius)) throw DimensionMismatch("cochain table has the wrong length");
  TowerPtr tower = cochain_tower(f.degree);
  return {f.degree, radius, tower->push(radius, f.radius, f.values)};
}

CochainPrefix BarComplex::apply_coboundary(const CochainPrefix& f, Level radius) const {
  const std::size_t p = f.degree + 1;
  const Level m = read_level(radius);
  if (f.radius < m) {
    throw DimensionMismatch("d f on B_" + std::to_string(radius) + " needs f on B_" + std::to_string(m) + ", have B_" + std::to_string(f.radius));
  }
  CochainPrefix src = f.radius == m ? f : restrict(f, m);
  if (src.values.size() != cochain_dim(f.degree, m)) throw DimensionMismatch("cochain table has the wrong length");
  const Index d = state_->core->dim();
  const std::size_t tuples = cochain_dim(p, radius) / std::max<Index>(d, 1);
  CochainPrefix out{p, radius, zero_vector(field(), cochain_dim(p, radius))};
  for (std::size_t k = 0; k < tuples; ++k) {
    for (Index c = 0; c < d; ++c) out.values[k * d + c] = dot(row(p, radius, k, c), src.values, field());
  }
  return out;
}

DefectReport BarComplex::cocycle_defect(const CochainPrefix& z, std::size_t max_reported) const {
  const std::size_t p = z.degree;
  if (p == 0) throw MalformedTower("cocycle_defect needs degree >= 1");
  if (z.values.size() != cochain_dim(p, z.radius)) throw DimensionMismatch("cochain table has the wrong length");
  const std::size_t base = state_->core->balls.size(z.radius);
  const std::size_t tuples = checked_power(base, p + 1, 1);
  DefectReport report;
  std::vector<std::size_t> args(p);
  for (std::size_t k = 0; k < tuples; ++k) {
    const auto t = state_->core->decode(p + 1, base, k);
    // (d z)(g_1..g_{p+1}) = pi^{g_1} z(g_2..) + sum (-1)^i z(..g_i g_{i+1}..) + (-1)^{p+1} z(g_1..g_p)
    Vector acc = state_->core->rep.act(state_->core->balls.element(t[0])).apply(value(z, std::vector<std::size_t>(t.begin() + 1, t.end())));
    bool checkable = true;
    for (std::size_t i = 1; i <= p && checkable; ++i) {
      const Element prod = group().multiply(state_->core->balls.element(t[i - 1]), state_->core->balls.element(t[i]));
      const std::size_t pos = state_->core->balls.index_of(prod, z.radius);
      if (pos == Balls::npos) {
        checkable = false;
        break;
      }
      for (std::size_t a = 0; a + 1 < i; ++a) args[a] = t[a];
      args[i - 1] = pos;
      for (std::size_t a = i + 1; a <= p; ++a) args[a - 1] = t[a];
      Vector term = value(z, args);
      acc = i % 2 == 0 ? acc + term : acc - term;
    }
    if (!checkable) {
      ++report.unchecked;
      continue;
    }
    Vector last = value(z, std::vector<std::size_t>(t.begin(), t.end() - 1));
    acc = (p + 1) % 2 == 0 ? acc + last : acc - last;
    ++report.checked;
    if (!is_zero(acc)) {
      ++report.defect_count;
      if (report.defects.size() < max_reported) {
        CocycleDefect defect;
        for (auto x : t) defect.tuple.push_back(state_->core->balls.element(x));
        defect.value = std::move(acc);
        report.defects.push_back(std::move(defect));
      }
    }
  }
  return report;
}

CoboundarySolution solve_coboundary(const BarComplex& complex, const CochainPrefix& z, Level depth, const ClosureOptions& options) {
  if (z.degree == 0) throw MalformedTower("solve_coboundary needs degree >= 1");
  DefectReport defect = complex.cocycle_defect(z, 1);
  if (!defect.is_cocycle()) {
    std::string where;
    for (const auto& g : defect.defects.front().tuple) where += (where.empty() ? "" : ", ") + complex.group().format(g);
    return {SolveFailure{FailureKind::not_a_cocycle, 0, "d z is nonzero at (" + where + ")"}, std::nullopt};
  }
  TowerMap map = complex.relabeled_coboundary(z.degree);
  std::vector<Vector> w;
  for (Level j = 1; j <= z.radius; ++j) w.push_back(complex.restrict(z, j).values);
  CoboundarySolution out{construct_preimage(map, w, depth, options), std::nullopt};
  if (auto* cert = std::get_if<PreimageCertificate>(&out.result)) {
    out.preimage = CochainPrefix{z.degree - 1, complex.read_level(depth), cert->v.back()};
  }
  return out;
}

CohomologyDims finite_cohomology_dims(const BarComplex& complex, std::size_t degree, Index size_cap) {
  if (!complex.group().is_finite()) throw MalformedTower("finite_cohomology_dims needs a finite group");
  const Index top = complex.cochain_dim(degree + 1, 1);
  if (top > size_cap) {
    throw DimensionMismatch("|G|^" + std::to_string(degree + 1) + " dim V = " + std::to_string(top) + " exceeds the size cap " + std::to_string(size_cap));
  }
  const Matrix& next = complex.coboundary(degree + 1).level_map(1);
  CohomologyDims dims;
  dims.cocycles = complex.cochain_dim(degree, 1) - rank(next);
  if (degree > 0) {
    const Matrix& prev = complex.coboundary(degree).level_map(1);
    if (!(next * prev).is_zero()) throw AlgebraError("d o d is nonzero");
    dims.coboundaries = rank(prev);
  }
  dims.cohomology = dims.cocycles - dims.coboundaries;
  return dims;
}

}  // namespace autoclose
