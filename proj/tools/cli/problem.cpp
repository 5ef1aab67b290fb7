#include "problem.hpp"

#include <algorithm>
#include <array>

#include "fixtures.hpp"

#include "autoclose/errors.hpp"

namespace autoclose::cli {

namespace {

constexpr std::array<const char*, 4> kCommands{"solve", "cohom", "counterexample", "verify"};

ClosureOptions closure_options(const ProblemDocument& doc, const Node& payload) {
  ClosureOptions options;
  if (doc.window) options.window = *doc.window;
  if (payload.has("max_level")) options.max_level = payload.at("max_level").as_count();
  return options;
}

Level positive(const Node& node) {
  std::size_t v = node.as_count();
  if (v == 0) node.fail("must be at least 1");
  return v;
}

// Explicit finite data, optionally continued by its last level.
class DataProvider final : public LevelProvider {
 public:
  DataProvider(Field field, std::vector<Index> dims, std::vector<Matrix> q, bool stationary)
      : field_(field), dims_(std::move(dims)), q_(std::move(q)), stationary_(stationary) {}

  Field field() const override { return field_; }
  Index dim(Level i) const override {
    check(i);
    return dims_[std::min(i, dims_.size()) - 1];
  }
  Matrix connecting(Level i) const override {
    check(i + 1);
    if (i < dims_.size()) return q_[i - 1];
    return Matrix::identity(field_, dims_.back());
  }
  std::optional<Level> stationary_from() const override {
    if (stationary_) return Level{dims_.size()};
    return std::nullopt;
  }
  std::optional<Level> max_level() const override {
    if (stationary_) return std::nullopt;
    return Level{dims_.size()};
  }
  std::string describe() const override { return "explicit tower with " + std::to_string(dims_.size()) + " levels"; }

 private:
  void check(Level i) const {
    if (!stationary_ && i > dims_.size()) throw MalformedTower("level " + std::to_string(i) + " lies beyond the explicit tower");
  }

  Field field_;
  std::vector<Index> dims_;
  std::vector<Matrix> q_;
  bool stationary_;
};

class DataMap final : public LevelMapProvider {
 public:
  DataMap(std::vector<Level> reads, std::vector<Matrix> maps, bool stationary)
      : reads_(std::move(reads)), maps_(std::move(maps)), stationary_(stationary) {}

  Level read_level(Level j) const override {
    check(j);
    if (j <= reads_.size()) return reads_[j - 1];
    return reads_.back() + (j - reads_.size());
  }
  Matrix level_map(Level j) const override {
    check(j);
    return maps_[std::min(j, maps_.size()) - 1];
  }
  std::optional<Level> stationary_from() const override {
    if (stationary_) return Level{maps_.size()};
    return std::nullopt;
  }

 private:
  void check(Level j) const {
    if (!stationary_ && j > maps_.size()) throw MalformedTower("level " + std::to_string(j) + " lies beyond the explicit map");
  }

  std::vector<Level> reads_;
  std::vector<Matrix> maps_;
  bool stationary_;
};

}  // namespace

Scalar random_scalar(std::mt19937_64& rng, Field field) {
  if (field.is_prime()) return Scalar(field, static_cast<long>(rng() % field.modulus()));
  return Scalar(field, static_cast<long>(rng() % 11) - 5);
}

Vector random_vector(std::mt19937_64& rng, Field field, Index n) {
  Vector v;
  v.reserve(n);
  for (Index k = 0; k < n; ++k) v.push_back(random_scalar(rng, field));
  return v;
}

TowerPtr build_tower(const Node& node, Field field) {
  if (node.has("builtin")) {
    const Node b = node.at("builtin");
    const std::string name = b.as_string();
    if (name == "coordinate_projection") return coordinate_projection_tower(field);
    if (name == "constant") return constant_tower(field, node.at("dim").as_count());
    b.fail("unknown builtin tower \"" + name + "\"");
  }
  const Node dims_node = node.at("dims");
  std::vector<Index> dims;
  for (std::size_t k = 0; k < dims_node.size(); ++k) dims.push_back(dims_node.at(k).as_count());
  if (dims.empty()) dims_node.fail("a tower needs at least one level");
  const Node qs = node.at("q_matrices");
  if (qs.size() + 1 != dims.size()) qs.fail("expected " + std::to_string(dims.size() - 1) + " connecting matrices");
  std::vector<Matrix> q;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) q.push_back(parse_matrix(qs.at(k), field, dims[k], dims[k + 1]));
  const bool stationary = node.has("stationary") && node.at("stationary").as_bool();
  return std::make_shared<Tower>(std::make_shared<DataProvider>(field, std::move(dims), std::move(q), stationary));
}

TowerMap build_map(const Node& node, Field field) {
  if (node.has("builtin")) {
    const Node b = node.at("builtin");
    const std::string name = b.as_string();
    if (name == "example1_field") return example1_map(field);
    if (name == "difference_map") return difference_map(field);
    if (name == "identity") return identity_map(field);
    if (name == "zero") return zero_map(field);
    if (name == "example1_integer") b.fail("example1_integer is handled by the counterexample command");
    b.fail("unknown builtin map \"" + name + "\"");
  }
  TowerPtr source = build_tower(node.at("source"), field);
  TowerPtr target = build_tower(node.at("target"), field);
  const Node levels = node.at("levels");
  if (levels.size() == 0) levels.fail("a map needs at least one level");
  std::vector<Level> reads;
  std::vector<Matrix> maps;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const Node level = levels.at(k);
    const Node read = level.at("read_level");
    Level i = positive(read);
    if (!reads.empty() && i < reads.back()) read.fail("read levels must be non-decreasing");
    Index rows = 0;
    Index cols = 0;
    try {
      rows = target->dim(k + 1);
      cols = source->dim(i);
    } catch (const AlgebraError& e) {
      read.fail(e.what());
    }
    reads.push_back(i);
    maps.push_back(parse_matrix(level.at("matrix"), field, rows, cols));
  }
  const bool stationary = node.has("stationary") && node.at("stationary").as_bool();
  if (stationary && (!source->stationary_from() || !target->stationary_from() || *source->stationary_from() > reads.back() ||
                     *target->stationary_from() > reads.size())) {
    node.at("stationary").fail("a stationary map needs stationary towers reached by its last level");
  }
  const Level count = reads.size();
  TowerMap map(source, target, std::make_shared<DataMap>(std::move(reads), std::move(maps), stationary), false, "explicit map");
  if (auto bad = verify_squares(map, count)) {
    levels.fail("square (" + std::to_string(bad->first) + ", " + std::to_string(bad->second) + ") does not commute");
  }
  return map;
}

SolveFixture build_solve(const ProblemDocument& doc) {
  const Node payload(doc.payload, "/payload");
  const Field field = doc.field;
  SolveFixture fx;
  TowerMap original = build_map(payload.at("map"), field);
  fx.map = reindex_cofinal(original);
  fx.options = closure_options(doc, payload);
  const Tower& target = *fx.map.target();

  const Node t = payload.at("target");
  if (t.has("prefix")) {
    const Node prefix = t.at("prefix");
    for (std::size_t k = 0; k < prefix.size(); ++k) fx.w.push_back(parse_vector(prefix.at(k), field, target.dim(k + 1)));
  } else if (t.has("top")) {
    const Node top = t.at("top");
    const Level level = positive(top.at("level"));
    Vector v = parse_vector(top.at("vector"), field, target.dim(level));
    fx.w = consistent_prefix_from(target, level, v);
  } else if (t.has("pattern")) {
    // Coordinates of an element of a coordinate tower, repeating the pattern.
    const Node pattern = t.at("pattern");
    const Level length = positive(t.at("length"));
    Vector values = parse_vector(pattern, field);
    if (values.empty()) pattern.fail("pattern is empty");
    Vector top;
    for (Index k = 0; k < target.dim(length); ++k) top.push_back(values[k % values.size()]);
    fx.w = consistent_prefix_from(target, length, top);
  } else if (t.has("random_image")) {
    const Level level = positive(t.at("random_image").at("level"));
    std::mt19937_64 rng(doc.seed);
    Vector x = random_vector(rng, field, fx.map.source()->dim(level));
    for (Level j = 1; j <= level; ++j) fx.w.push_back(fx.map.level_map(j).apply(fx.map.source()->push(j, level, x)));
  } else {
    t.fail("expected one of prefix, top, pattern, random_image");
  }
  if (fx.w.empty()) t.fail("target prefix is empty");
  fx.depth = doc.depth.value_or(fx.w.size());
  return fx;
}

namespace {

GroupModel build_group(const Node& node) {
  const std::string kind = node.at("kind").as_string();
  try {
    if (kind == "cyclic") return GroupModel::cyclic(positive(node.at("order")));
    if (kind == "free") return GroupModel::free(positive(node.at("rank")));
    if (kind == "free_abelian") return GroupModel::free_abelian(positive(node.at("rank")));
    if (kind == "finite_table") {
      const Node table = node.at("table");
      std::vector<std::vector<std::size_t>> rows;
      for (std::size_t r = 0; r < table.size(); ++r) {
        const Node row = table.at(r);
        std::vector<std::size_t> entries;
        for (std::size_t c = 0; c < row.size(); ++c) entries.push_back(row.at(c).as_count());
        rows.push_back(std::move(entries));
      }
      return GroupModel::finite_table(std::move(rows));
    }
  } catch (const AlgebraError& e) {
    node.fail(e.what());
  }
  node.at("kind").fail("unknown group kind \"" + kind + "\"");
}

Representation build_representation(const Node& node, const GroupModel& group, Field field) {
  try {
    if (node.has("trivial") && node.at("trivial").as_bool()) return Representation::trivial(group, field, positive(node.at("dim")));
    const Node mats = node.at("matrices");
    std::vector<Matrix> ms;
    for (std::size_t k = 0; k < mats.size(); ++k) ms.push_back(parse_square(mats.at(k), field));
    if (ms.empty()) mats.fail("expected at least one matrix");
    const Index dim = ms.front().rows();
    return Representation(group, field, dim, std::move(ms));
  } catch (const AlgebraError& e) {
    node.fail(e.what());
  }
}

}  // namespace

CohomFixture build_cohom(const ProblemDocument& doc) {
  const Node payload(doc.payload, "/payload");
  GroupModel group = build_group(payload.at("group"));
  Representation rep = build_representation(payload.at("representation"), group, doc.field);
  CohomFixture fx{BarComplex(std::move(rep)), payload.at("degree").as_count(), payload.at("mode").as_string(), std::nullopt, 1, {}};
  fx.options = closure_options(doc, payload);
  if (fx.mode != "dims" && fx.mode != "check" && fx.mode != "solve") payload.at("mode").fail("expected dims, check or solve");
  if (fx.mode == "dims") {
    if (!group.is_finite()) payload.at("group").fail("dims needs a finite group");
    return fx;
  }
  if (fx.degree == 0) payload.at("degree").fail("check and solve need degree >= 1");
  const Node c = payload.at("cochain");
  const std::size_t p = fx.degree;
  if (c.has("values")) {
    const Level radius = positive(c.at("radius"));
    fx.cochain = CochainPrefix{p, radius, parse_vector(c.at("values"), doc.field, fx.complex.cochain_dim(p, radius))};
  } else if (c.has("coboundary_of")) {
    const Node f = c.at("coboundary_of");
    const Level fr = positive(f.at("radius"));
    CochainPrefix pre{p - 1, fr, parse_vector(f.at("values"), doc.field, fx.complex.cochain_dim(p - 1, fr))};
    const Level radius = positive(c.at("radius"));
    if (fx.complex.read_level(radius) > fr) c.at("radius").fail("needs coboundary_of radius >= " + std::to_string(fx.complex.read_level(radius)));
    fx.cochain = fx.complex.apply_coboundary(pre, radius);
  } else if (c.has("random_coboundary")) {
    const Level radius = positive(c.at("random_coboundary").at("radius"));
    std::mt19937_64 rng(doc.seed);
    const Level fr = fx.complex.read_level(radius);
    CochainPrefix pre{p - 1, fr, random_vector(rng, doc.field, fx.complex.cochain_dim(p - 1, fr))};
    fx.cochain = fx.complex.apply_coboundary(pre, radius);
  } else {
    c.fail("expected values, coboundary_of or random_coboundary");
  }
  fx.depth = doc.depth.value_or(fx.cochain->radius);
  return fx;
}

ProblemDocument parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("/", std::string("malformed JSON: ") + e.what());
  }
  return parse_problem(doc);
}

ProblemDocument parse_problem(const json& raw) {
  const Node root(raw, "");
  if (!raw.is_object()) root.fail("expected a JSON object");
  ProblemDocument doc;
  if (root.has("version")) {
    doc.version = static_cast<int>(root.at("version").as_int());
    if (doc.version != 1) root.at("version").fail("unsupported version " + std::to_string(doc.version));
  }
  doc.command = root.at("command").as_string();
  if (std::find_if(kCommands.begin(), kCommands.end(), [&](const char* c) { return doc.command == c; }) == kCommands.end()) {
    root.at("command").fail("unknown command \"" + doc.command + "\"");
  }
  if (root.has("field")) {
    try {
      doc.field = Field::parse(root.at("field").as_string());
    } catch (const AlgebraError& e) {
      root.at("field").fail(e.what());
    }
  }
  if (doc.field.kind() == Field::Kind::integer && doc.command != "counterexample") {
    root.at("field").fail("field \"z\" is only available to the counterexample command, not \"" + doc.command + "\"");
  }
  if (root.has("depth")) doc.depth = positive(root.at("depth"));
  if (root.has("seed")) doc.seed = root.at("seed").as_count();
  if (root.has("window")) doc.window = positive(root.at("window"));
  if (root.has("payload")) {
    if (!raw["payload"].is_object()) root.at("payload").fail("expected an object");
    doc.payload = raw["payload"];
  }
  // Build the fixtures once so schema and shape errors surface here with their paths.
  try {
    if (doc.command == "solve") build_solve(doc);
    if (doc.command == "cohom") build_cohom(doc);
    if (doc.command == "verify") {
      const Node payload(doc.payload, "/payload");
      parse_problem(payload.at("problem").value());
    }
  } catch (const InputError&) {
    throw;
  } catch (const AlgebraError& e) {
    throw InputError("/payload", e.what());
  }
  return doc;
}

json to_json(const ProblemDocument& doc) {
  json out;
  out["version"] = doc.version;
  out["command"] = doc.command;
  out["field"] = doc.field.name();
  if (doc.depth) out["depth"] = *doc.depth;
  out["seed"] = doc.seed;
  if (doc.window) out["window"] = *doc.window;
  out["payload"] = doc.payload;
  return out;
}

json Report::body() const {
  json out;
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  out["status"] = status;
  out["command"] = command;
  out["result"] = result;
  out["timing_ms"] = timing_ms;
  if (problem) out["problem"] = *problem;
  return out;
}

Report input_error_report(const std::string& command, const std::string& message, const std::string& path) {
  Report r;
  r.exit_code = kInputError;
  r.command = command;
  r.status = "input_error";
  r.result = {{"command", command}, {"message", message}, {"path", path}};
  r.human = "input error at " + path + ": " + message + "\n";
  return r;
}

}  // namespace autoclose::cli
