#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "autoclose/tower_map.hpp"

namespace autoclose {

struct ClosureOptions {
  /// Levels the chain must stay unchanged before it counts as stabilized.
  Level window = 3;
  /// Deepest level the stabilization search may materialize. Unset means the
  /// search stops at depth + window.
  std::optional<Level> max_level;
};

struct StabilizationRecord {
  Level level = 0;
  Level ell = 0;
  /// Observed: the chain was constant over the confirmation window, or certified.
  bool stabilized = false;
  /// The map is stationary from a level the search reached, so the value is final.
  bool certified = false;
  /// Deepest level examined.
  Level horizon = 0;
  /// q^ell_i(ker T_ell).
  Subspace kernel_image;
};

/// Chain q^j_i(ker T_j) for j = i..depth. The map must have identity index
/// function (see reindex_cofinal).
StabilizationRecord stabilization_index(const TowerMap& map, Level i, Level depth, Level window = 3);

/// Deepen-and-recheck: starts at `start` and extends the horizon until the
/// record stabilizes or `limit` is reached.
StabilizationRecord stabilize(const TowerMap& map, Level i, Level start, Level limit, Level window = 3);

/// Records for i = 1..depth with ell made non-decreasing.
std::vector<StabilizationRecord> stabilization_table(const TowerMap& map, Level depth, const ClosureOptions& options = {});

struct KernelImage {
  Subspace subspace;  ///< Q_i(ker T), or its depth-truncated value
  bool stabilized = false;
};

KernelImage kernel_level_image(const TowerMap& map, Level i, Level depth, Level window = 3);

/// nullopt when T_j x = w_j is solvable for every level of the prefix,
/// otherwise the least failing level.
std::optional<Level> per_level_membership(const TowerMap& map, const std::vector<Vector>& w);

struct CertificateChecks {
  std::vector<bool> t_equation;     ///< T_{ell(i)}(lift_i) = w_{ell(i)}
  std::vector<bool> lift;           ///< v_i = q^{ell(i)}_i(lift_i)
  std::vector<bool> consistency;    ///< q_{i-1}(v_i) = v_{i-1}; true at i = 1
  std::vector<bool> level_equation; ///< T_i(v_i) = w_i

  bool all() const;
};

struct PreimageCertificate {
  std::vector<Vector> v;      ///< v_1..v_D in the (relabeled) source levels
  std::vector<Vector> lifts;  ///< lift_i in V_{ell(i)}
  std::vector<Level> ell;
  CertificateChecks checks;
  /// Some ell(i) was observed rather than certified.
  bool depth_conditional = false;

  Level depth() const { return v.size(); }
  bool verified() const { return checks.all(); }
};

enum class FailureKind {
  inconsistent_target,  ///< w is not a consistent prefix
  not_in_level_image,   ///< some w_j is outside the image of T_j
  unstabilized,         ///< ell(i) could not be observed within the allowed depth
  target_too_short,     ///< w does not reach level ell(depth)
  defect_unsolvable,    ///< the correction step failed; the observed ell was too small
  not_a_cocycle,        ///< the cochain fails the cocycle identity on its block
};

std::string to_string(FailureKind kind);

struct SolveFailure {
  FailureKind kind;
  Level level = 0;
  std::string message;
};

using SolveResult = std::variant<PreimageCertificate, SolveFailure>;

/// Builds v with T(v) = w on levels 1..depth following the recursion
/// lift_i = v' + v'', v' a particular solution at level ell(i) and v'' in
/// ker T_{ell(i)} correcting the defect against v_{i-1}.
SolveResult construct_preimage(const TowerMap& map, const std::vector<Vector>& w, Level depth,
                               const ClosureOptions& options = {});

/// Re-derives every check of a certificate from the map and w alone.
CertificateChecks verify_certificate(const TowerMap& map, const std::vector<Vector>& w, const PreimageCertificate& cert);

}  // namespace autoclose
