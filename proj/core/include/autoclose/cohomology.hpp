#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autoclose/closure.hpp"
#include "autoclose/group.hpp"
#include "autoclose/representation.hpp"
#include "autoclose/tower_map.hpp"

namespace autoclose {

/// Values f(g_1..g_p) for every tuple of the ball B_radius, flattened as
/// tuple_index * dim V + component with tuples in lexicographic order of
/// ball positions (first entry most significant).
struct CochainPrefix {
  std::size_t degree = 0;
  Level radius = 0;
  Vector values;
};

struct CocycleDefect {
  std::vector<Element> tuple;
  Vector value;  ///< (d z)(tuple), nonzero
};

struct DefectReport {
  std::size_t checked = 0;    ///< tuples whose inputs all lie in the block
  std::size_t unchecked = 0;  ///< tuples skipped because a product leaves the block
  std::size_t defect_count = 0;
  std::vector<CocycleDefect> defects;  ///< the first few nonzero values

  bool block_too_small() const { return checked == 0; }
  bool is_cocycle() const { return defect_count == 0; }
};

struct CohomologyDims {
  Index cocycles = 0;     ///< dim Z^p
  Index coboundaries = 0; ///< dim B^p
  Index cohomology = 0;   ///< dim H^p
};

struct CoboundarySolution {
  SolveResult result;
  /// f' with d f' = z on the certified levels, at radius i_depth.
  std::optional<CochainPrefix> preimage;
};

/// Inhomogeneous bar complex C^0 -> C^1 -> ... of a representation, with
/// C^p presented as the tower of its restrictions to B_n^p.
///
/// (d_p f)(g_1..g_p) = pi^{g_1} f(g_2..g_p)
///                     + sum_{i=1}^{p-1} (-1)^i f(g_1..g_i g_{i+1}..g_p)
///                     + (-1)^p f(g_1..g_{p-1}).
///
/// Copies share balls, towers and maps.
class BarComplex {
 public:
  explicit BarComplex(Representation rep);

  const Representation& representation() const;
  const GroupModel& group() const;
  const Balls& balls() const;
  Field field() const;

  /// Source level read by level n of a coboundary: 2n for word groups, n for finite groups.
  Level read_level(Level n) const;
  /// |B_n|^p * dim V.
  Index cochain_dim(std::size_t degree, Level radius) const;

  TowerPtr cochain_tower(std::size_t degree) const;
  /// d_p : C^{p-1} -> C^p for p >= 1.
  TowerMap coboundary(std::size_t degree) const;
  /// reindex_cofinal(coboundary(p)), cached so kernels are shared between solves.
  TowerMap relabeled_coboundary(std::size_t degree) const;

  /// Ball positions of tuple k in B_radius^degree.
  std::vector<std::size_t> decode_tuple(std::size_t degree, Level radius, std::size_t k) const;
  /// Row (tuple_index, comp) of d_degree on B_radius, over C^{degree-1} on B_{i_radius}.
  SparseRow row(std::size_t degree, Level radius, std::size_t tuple_index, Index comp) const;
  /// f(tuple) as a vector in V.
  Vector value(const CochainPrefix& f, const std::vector<std::size_t>& tuple) const;

  /// Restriction of f to a smaller ball.
  CochainPrefix restrict(const CochainPrefix& f, Level radius) const;
  /// d f on B_radius; needs f.radius >= read_level(radius).
  CochainPrefix apply_coboundary(const CochainPrefix& f, Level radius) const;
  /// d_{p+1} z on every tuple of B_radius^{p+1} whose inputs lie in the block.
  DefectReport cocycle_defect(const CochainPrefix& z, std::size_t max_reported = 16) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Checks z is a cocycle, then solves d f = z on levels 1..depth through the
/// closure solver.
CoboundarySolution solve_coboundary(const BarComplex& complex, const CochainPrefix& z, Level depth,
                                    const ClosureOptions& options = {});

/// Exact (dim Z^p, dim B^p, dim H^p) of a finite group. Throws when
/// |G|^{p+1} dim V exceeds `size_cap`.
CohomologyDims finite_cohomology_dims(const BarComplex& complex, std::size_t degree, Index size_cap = Index{1} << 16);

}  // namespace autoclose
