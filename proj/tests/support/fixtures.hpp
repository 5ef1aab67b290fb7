#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "autoclose/cohomology.hpp"
#include "autoclose/tower_map.hpp"

namespace fixtures {

using autoclose::Field;
using autoclose::Index;
using autoclose::Level;
using autoclose::Matrix;
using autoclose::Vector;
using Rng = std::mt19937_64;

/// ℚ, F_2, F_3, F_5, F_7, F_101 in turn.
Field field_for(std::size_t k);

/// Small entries: integers in [-3, 3] over Q (occasionally halves), uniform over F_p.
autoclose::Scalar random_scalar(Rng& rng, Field f);
Vector random_vector(Rng& rng, Field f, Index n);
Matrix random_matrix(Rng& rng, Field f, Index rows, Index cols, double density = 0.7);
/// A product rows x k times k x cols with k drawn at random, so low ranks are common.
Matrix random_low_rank(Rng& rng, Field f, Index rows, Index cols);
Matrix random_invertible(Rng& rng, Field f, Index n);
/// Full row rank (rows <= cols).
Matrix random_surjective(Rng& rng, Field f, Index rows, Index cols);

/// Random band-built map between explicit towers. Source levels and target
/// levels are stationary from the cutoff, so stabilization is certified.
struct BandFixture {
  Field field;
  Level depth = 0;
  Level cutoff = 0;
  autoclose::TowerMap map;
  autoclose::TowerMap relabeled;
};
BandFixture random_band_fixture(Rng& rng, Field f, Level max_depth = 12, Index max_dim = 6);

/// Constant source K^m with monomial connecting maps; T_j reads the V_1
/// coordinates killed at levels <= j. The expectations are computed by hand
/// from the permutations, not by elimination.
struct StabilizationFixture {
  Field field;
  Index dim = 0;
  autoclose::TowerMap relabeled;
  Level deepest_kill = 0;  ///< 0 when nothing is killed
  std::vector<Level> expected_ell;  ///< index i - 1, i = 1..levels
  std::vector<autoclose::Subspace> expected_image;
};
StabilizationFixture stabilization_fixture(Rng& rng, Field f, Level levels);

/// Random representation of `group` (word groups, cyclic groups) of the given dimension.
autoclose::Representation random_representation(Rng& rng, const autoclose::GroupModel& group, Field f, Index dim);

autoclose::CochainPrefix random_cochain(Rng& rng, const autoclose::BarComplex& complex, std::size_t degree,
                                        Level radius);

}  // namespace fixtures
