#include "autoclose/closure.hpp"

#include <algorithm>
#include <string>

#include "autoclose/errors.hpp"
#include "autoclose/linalg.hpp"

namespace autoclose {

namespace {

void require_identity_index(const TowerMap& map, const char* op) {
  if (!map.index_is_identity()) throw MalformedTower(std::string(op) + " needs a relabeled map; apply reindex_cofinal first");
}

Level source_limit(const TowerMap& map, Level wanted) {
  Level limit = wanted;
  if (auto m = map.source()->max_level()) limit = std::min(limit, *m);
  if (auto m = map.target()->max_level()) limit = std::min(limit, *m);
  return limit;
}

}  // namespace

StabilizationRecord stabilization_index(const TowerMap& map, Level i, Level depth, Level window) {
  require_identity_index(map, "stabilization_index");
  if (i == 0) throw MalformedTower("levels start at 1");
  if (depth < i) throw MalformedTower("stabilization_index needs depth >= i");
  std::vector<Subspace> kernels;
  kernels.reserve(depth - i + 1);
  for (Level j = i; j <= depth; ++j) kernels.push_back(map.kernel(j));
  StableImage chain = stable_images(*map.source(), kernels, i, depth, window);

  StabilizationRecord rec;
  rec.level = i;
  rec.ell = chain.ell;
  rec.horizon = depth;
  rec.kernel_image = std::move(chain.subspace);
  auto stationary = map.stationary_from();
  rec.certified = stationary && depth >= std::max(i, *stationary);
  rec.stabilized = chain.stabilized || rec.certified;
  return rec;
}

StabilizationRecord stabilize(const TowerMap& map, Level i, Level start, Level limit, Level window) {
  limit = source_limit(map, limit);
  Level horizon = std::min(std::max(start, i), limit);
  if (horizon < i) throw MalformedTower("level " + std::to_string(i) + " lies beyond the last level of the fixture");
  while (true) {
    StabilizationRecord rec = stabilization_index(map, i, horizon, window);
    if (rec.stabilized || horizon >= limit) return rec;
    horizon = std::min(limit, std::max(horizon + 1, rec.ell + window));
  }
}

std::vector<StabilizationRecord> stabilization_table(const TowerMap& map, Level depth, const ClosureOptions& options) {
  const Level start = depth + options.window;
  const Level limit = std::max(start, options.max_level.value_or(start));
  std::vector<StabilizationRecord> out;
  for (Level i = 1; i <= depth; ++i) {
    StabilizationRecord rec = stabilize(map, i, start, limit, options.window);
    if (!out.empty() && rec.ell < out.back().ell) {
      // The chain is constant from the observed ell on, so any later level gives the same image.
      rec.ell = out.back().ell;
    }
    rec.ell = std::max(rec.ell, i);
    out.push_back(std::move(rec));
  }
  return out;
}

KernelImage kernel_level_image(const TowerMap& map, Level i, Level depth, Level window) {
  StabilizationRecord rec = stabilization_index(map, i, depth, window);
  return {std::move(rec.kernel_image), rec.stabilized};
}

std::optional<Level> per_level_membership(const TowerMap& map, const std::vector<Vector>& w) {
  for (Level j = 1; j <= w.size(); ++j) {
    const Matrix& t = map.level_map(j);
    if (w[j - 1].size() != t.rows()) throw DimensionMismatch("target prefix has the wrong length at level " + std::to_string(j));
    if (!is_solvable(t, w[j - 1])) return j;
  }
  return std::nullopt;
}

bool CertificateChecks::all() const {
  auto ok = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  return ok(t_equation) && ok(lift) && ok(consistency) && ok(level_equation);
}

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::inconsistent_target: return "inconsistent_target";
    case FailureKind::not_in_level_image: return "not_in_level_image";
    case FailureKind::unstabilized: return "unstabilized";
    case FailureKind::target_too_short: return "target_too_short";
    case FailureKind::defect_unsolvable: return "defect_unsolvable";
    case FailureKind::not_a_cocycle: return "not_a_cocycle";
  }
  return "unknown";
}

SolveResult construct_preimage(const TowerMap& map, const std::vector<Vector>& w, Level depth, const ClosureOptions& options) {
  require_identity_index(map, "construct_preimage");
  if (depth == 0) throw MalformedTower("construct_preimage needs depth >= 1");
  const Tower& src = *map.source();

  if (auto bad = check_consistent(*map.target(), w)) {
    return SolveFailure{FailureKind::inconsistent_target, *bad, "w is not consistent at level " + std::to_string(*bad)};
  }
  if (auto bad = per_level_membership(map, w)) {
    return SolveFailure{FailureKind::not_in_level_image, *bad, "w_" + std::to_string(*bad) + " is not in the image of T_" + std::to_string(*bad)};
  }

  std::vector<StabilizationRecord> table = stabilization_table(map, depth, options);
  PreimageCertificate cert;
  for (const auto& rec : table) {
    if (!rec.stabilized) {
      return SolveFailure{FailureKind::unstabilized, rec.level,
                          "kernel images at level " + std::to_string(rec.level) + " did not stabilize by level " + std::to_string(rec.horizon)};
    }
    if (!rec.certified) cert.depth_conditional = true;
    cert.ell.push_back(rec.ell);
  }
  if (cert.ell.back() > w.size()) {
    return SolveFailure{FailureKind::target_too_short, cert.ell.back(),
                        "w must reach level " + std::to_string(cert.ell.back()) + ", it has " + std::to_string(w.size())};
  }

  for (Level i = 1; i <= depth; ++i) {
    const Level l = cert.ell[i - 1];
    const Matrix& t = map.level_map(l);
    std::optional<Vector> vp = solve_particular(t, w[l - 1]);
    if (!vp) return SolveFailure{FailureKind::not_in_level_image, l, "no particular solution at level " + std::to_string(l)};
    Vector lift = std::move(*vp);
    if (i > 1) {
      const Matrix& down = src.connect(i - 1, l);
      Vector defect = cert.v.back() - down.apply(lift);
      if (!is_zero(defect)) {
        const Subspace& ker = map.kernel(l);
        Matrix restricted = down * ker.basis().transpose();
        std::optional<Vector> c = solve_particular(restricted, defect);
        if (!c) {
          return SolveFailure{FailureKind::defect_unsolvable, i,
                              "defect at level " + std::to_string(i) + " is not reachable from ker T_" + std::to_string(l)};
        }
        lift = lift + ker.basis().transpose().apply(*c);
      }
    }
    cert.v.push_back(src.connect(i, l).apply(lift));
    cert.lifts.push_back(std::move(lift));
  }
  cert.checks = verify_certificate(map, w, cert);
  return cert;
}

CertificateChecks verify_certificate(const TowerMap& map, const std::vector<Vector>& w, const PreimageCertificate& cert) {
  const Tower& src = *map.source();
  CertificateChecks out;
  const Level depth = cert.v.size();
  if (cert.lifts.size() != depth || cert.ell.size() != depth) throw MalformedTower("certificate arrays have different lengths");
  for (Level i = 1; i <= depth; ++i) {
    const Level l = cert.ell[i - 1];
    const bool in_range = l >= i && l <= w.size() && (i == 1 || l >= cert.ell[i - 2]);
    bool shapes = in_range && cert.lifts[i - 1].size() == src.dim(l) && cert.v[i - 1].size() == src.dim(i);
    out.t_equation.push_back(shapes && map.level_map(l).apply(cert.lifts[i - 1]) == w[l - 1]);
    out.lift.push_back(shapes && src.connect(i, l).apply(cert.lifts[i - 1]) == cert.v[i - 1]);
    out.consistency.push_back(i == 1 || (shapes && src.connecting(i - 1).apply(cert.v[i - 1]) == cert.v[i - 2]));
    out.level_equation.push_back(shapes && i <= w.size() && map.level_map(i).apply(cert.v[i - 1]) == w[i - 1]);
  }
  return out;
}

}  // namespace autoclose
