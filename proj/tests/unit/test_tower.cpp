#include <gtest/gtest.h>

#include "autoclose/errors.hpp"
#include "autoclose/linalg.hpp"
#include "autoclose/tower_map.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace autoclose;

namespace {

const Field Q = Field::rational();

TowerPtr random_explicit_tower(fixtures::Rng& rng, Field f, Level levels) {
  std::vector<Index> dims;
  for (Level i = 0; i < levels; ++i) dims.push_back(std::uniform_int_distribution<Index>(0, 5)(rng));
  std::vector<Matrix> qs;
  for (Level i = 0; i + 1 < levels; ++i) qs.push_back(fixtures::random_low_rank(rng, f, dims[i], dims[i + 1]));
  return explicit_tower(f, dims, qs);
}

Subspace constants(Field f, Index n) {
  return Subspace::span(f, n, {Vector(n, Scalar::one(f))});
}

}  // namespace

TEST(Tower, CoordinateProjection) {
  auto t = coordinate_projection_tower(Q);
  EXPECT_EQ(t->dim(5), 5u);
  EXPECT_EQ(t->connect(2, 4), Matrix::from_ints(Q, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  EXPECT_EQ(t->connect_row(1, 9, 0), (SparseRow{{0, Scalar::one(Q)}}));
  EXPECT_EQ(t->push(1, 3, integer_vector(Q, {4, 5, 6})), integer_vector(Q, {4}));
  EXPECT_THROW(t->connect(3, 2), MalformedTower);
  EXPECT_THROW(t->dim(0), MalformedTower);
}

TEST(Tower, ExplicitFixtureValidation) {
  EXPECT_THROW(explicit_tower(Q, {2, 3}, {}), MalformedTower);
  EXPECT_THROW(explicit_tower(Q, {2, 3}, {Matrix::identity(Q, 2)}), MalformedTower);
  EXPECT_THROW(explicit_tower(Q, {2, 2}, {Matrix::identity(Field::prime(2), 2)}), FieldMismatch);
  auto t = explicit_tower(Q, {1, 2}, {Matrix::from_ints(Q, {{1, 1}})});
  EXPECT_EQ(t->max_level(), Level{2});
  EXPECT_THROW(t->dim(3), MalformedTower);
}

TEST(Tower, ConsistencyWithNonSurjectiveMaps) {
  // q_1 = 0: every v_2 maps to 0, so only v_1 = 0 is consistent.
  auto t = explicit_tower(Q, {1, 1}, {Matrix(Q, 1, 1)});
  EXPECT_EQ(check_consistent(*t, {integer_vector(Q, {0}), integer_vector(Q, {7})}), std::nullopt);
  EXPECT_EQ(check_consistent(*t, {integer_vector(Q, {1}), integer_vector(Q, {7})}), Level{1});
  EXPECT_THROW(check_consistent(*t, {integer_vector(Q, {1, 2})}), DimensionMismatch);
}

TEST(Tower, ConnectIsTransitiveOnRandomFixtures) {
  fixtures::Rng rng(21);
  for (std::size_t k = 0; k < 60; ++k) {
    const Field f = fixtures::field_for(k);
    auto t = random_explicit_tower(rng, f, 7);
    for (Level i = 1; i <= 7; ++i) {
      for (Level j = i; j <= 7; ++j) {
        for (Level l = j; l <= 7; ++l) {
          EXPECT_EQ(t->connect(i, l), oracle::multiply(t->connect(i, j), t->connect(j, l)));
        }
        for (Index c = 0; c < t->dim(i); ++c) EXPECT_EQ(t->connect_row(i, j, c), t->connect(i, j).row(c));
      }
    }
  }
}

TEST(Tower, CheckConsistentMatchesOneStepOracle) {
  fixtures::Rng rng(22);
  for (std::size_t k = 0; k < 80; ++k) {
    const Field f = fixtures::field_for(k);
    auto t = random_explicit_tower(rng, f, 6);
    auto prefix = consistent_prefix_from(*t, 6, fixtures::random_vector(rng, f, t->dim(6)));
    ASSERT_EQ(prefix.size(), 6u);
    EXPECT_EQ(check_consistent(*t, prefix), std::nullopt);
    const Level bad = std::uniform_int_distribution<Level>(1, 6)(rng);
    prefix[bad - 1] = fixtures::random_vector(rng, f, t->dim(bad));
    std::optional<Level> expected;
    for (Level i = 1; i < 6 && !expected; ++i) {
      if (!(oracle::apply(t->connecting(i), prefix[i]) == prefix[i - 1])) expected = i;
    }
    EXPECT_EQ(check_consistent(*t, prefix), expected);
  }
}

TEST(StableImages, FullAndZeroSubspaces) {
  auto t = coordinate_projection_tower(Q);
  std::vector<Subspace> full, zero;
  for (Level j = 2; j <= 8; ++j) {
    full.push_back(Subspace::full(Q, j));
    zero.push_back(Subspace::zero(Q, j));
  }
  auto a = stable_images(*t, full, 2, 8);
  EXPECT_TRUE(a.stabilized);
  EXPECT_EQ(a.ell, 2u);
  EXPECT_EQ(a.subspace, Subspace::full(Q, 2));
  auto b = stable_images(*t, zero, 2, 8);
  EXPECT_TRUE(b.stabilized);
  EXPECT_EQ(b.ell, 2u);
  EXPECT_EQ(b.subspace, Subspace::zero(Q, 2));
  EXPECT_FALSE(stable_images(*t, full, 2, 3).stabilized);
}

TEST(StableImages, DifferenceMapKernelsAreConstants) {
  const Field F3 = Field::prime(3);
  TowerMap d = reindex_cofinal(difference_map(F3));
  std::vector<Subspace> kernels;
  for (Level j = 1; j <= 9; ++j) {
    kernels.push_back(d.kernel(j));
    EXPECT_EQ(d.kernel(j), constants(F3, d.source()->dim(j)));
  }
  auto s = stable_images(*d.source(), kernels, 1, 9);
  EXPECT_TRUE(s.stabilized);
  EXPECT_EQ(s.ell, 1u);
  EXPECT_EQ(s.subspace, constants(F3, d.source()->dim(1)));
}

TEST(StableImages, ContainedInEveryImageAndEqualPastEll) {
  fixtures::Rng rng(23);
  for (std::size_t k = 0; k < 60; ++k) {
    auto fx = fixtures::random_band_fixture(rng, fixtures::field_for(k), 8, 5);
    const TowerMap& m = fx.relabeled;
    const Level depth = fx.depth + 4;
    for (Level i = 1; i <= fx.depth; ++i) {
      std::vector<Subspace> kernels;
      for (Level j = i; j <= depth; ++j) kernels.push_back(m.kernel(j));
      auto s = stable_images(*m.source(), kernels, i, depth);
      for (Level j = i; j <= depth; ++j) {
        const Subspace pushed = image(m.source()->connect(i, j), kernels[j - i]);
        EXPECT_TRUE(pushed.contains(s.subspace));
        if (j >= s.ell) EXPECT_EQ(pushed, s.subspace);
      }
    }
  }
}

TEST(TowerMap, Example1MapShapes) {
  TowerMap m = example1_map(Q);
  EXPECT_EQ(m.read_level(1), 2u);
  EXPECT_EQ(m.read_level(5), 6u);
  EXPECT_EQ(m.level_map(2), Matrix::from_ints(Q, {{1, -2, 0}, {0, 1, -2}}));
  EXPECT_FALSE(m.index_is_identity());
  EXPECT_EQ(verify_squares(m, 8), std::nullopt);
  TowerMap r = reindex_cofinal(m);
  EXPECT_TRUE(r.index_is_identity());
  EXPECT_EQ(r.source()->dim(3), 4u);
  EXPECT_EQ(r.level_map(3), m.level_map(3));
  EXPECT_EQ(r.source()->connect(2, 4), m.source()->connect(3, 5));
  EXPECT_EQ(verify_squares(r, 8), std::nullopt);
}

TEST(TowerMap, BuiltinsPassSquares) {
  for (Field f : {Q, Field::prime(2), Field::prime(7)}) {
    for (const TowerMap& m : {example1_map(f), difference_map(f), identity_map(f), zero_map(f)}) {
      EXPECT_EQ(verify_squares(m, 7), std::nullopt) << m.name();
      for (Level j = 1; j <= 7; ++j) {
        for (Index r = 0; r < m.target()->dim(j); ++r) EXPECT_EQ(m.level_row(j, r), m.level_map(j).row(r));
      }
    }
  }
}

TEST(TowerMap, TamperedSquareIsReported) {
  auto tower = coordinate_projection_tower(Q);
  BandMapSpec spec;
  spec.read_level = [](Level j) { return j; };
  spec.coefficients = [](Level j) {
    Matrix id = Matrix::identity(Q, j);
    if (j != 2) return id;
    return Matrix::from_ints(Q, {{2, 0}, {0, 1}});
  };
  spec.name = "tampered";
  EXPECT_THROW(towermap_from_band(spec, tower, tower, 4), MalformedTower);
  TowerMap m = towermap_from_band(spec, tower, tower, 0);
  EXPECT_EQ(verify_squares(m, 4), (std::make_pair(Level{1}, Level{2})));
}

TEST(TowerMap, BandLevelsAreLiftedThroughTheSource) {
  // Declared read levels 2, 1, 3: the running maximum is 2, 2, 3 and level 2
  // is read from V_2 through q_1.
  auto src = coordinate_projection_tower(Q);
  auto tgt = coordinate_projection_tower(Q);
  BandMapSpec spec;
  spec.read_level = [](Level j) { return j == 1 ? Level{2} : j == 2 ? Level{1} : j; };
  spec.coefficients = [](Level j) {
    if (j == 1) return Matrix::from_ints(Q, {{1, 0}});
    if (j == 2) return Matrix::from_ints(Q, {{1}, {3}});
    std::vector<SparseRow> rows;
    for (Index k = 0; k < j; ++k) rows.push_back({{0, Scalar(Q, k == 1 ? 3L : 1L)}});
    return Matrix::from_rows(Q, j, rows);
  };
  TowerMap m = towermap_from_band(spec, src, tgt, 4);
  EXPECT_EQ(m.read_level(2), 2u);
  EXPECT_EQ(m.level_map(2), Matrix::from_ints(Q, {{1, 0}, {3, 0}}));
}

TEST(TowerMap, ShapeErrors) {
  auto tower = coordinate_projection_tower(Q);
  BandMapSpec spec;
  spec.read_level = [](Level j) { return j; };
  spec.coefficients = [](Level j) { return Matrix::identity(Q, j + 1); };
  EXPECT_THROW(towermap_from_band(spec, tower, tower, 2), MalformedTower);
  EXPECT_THROW(towermap_from_band(spec, tower, coordinate_projection_tower(Field::prime(3)), 2), FieldMismatch);
}

TEST(TowerMap, CoordinateBandUsesTightIndex) {
  // Output k reads inputs k and k + 2, so i_j = j + 2.
  BandMapSpec spec = coordinate_band(
      Q, [](Index k) { return SparseRow{{k, Scalar::one(Q)}, {k + 2, Scalar::one(Q)}}; }, "skip");
  auto t = coordinate_projection_tower(Q);
  TowerMap m = towermap_from_band(spec, t, t, 5);
  for (Level j = 1; j <= 5; ++j) EXPECT_EQ(m.read_level(j), j + 2);
  EXPECT_EQ(m.kernel(1).dim(), 2u);
}

TEST(TowerMap, RandomBandFixturesCommute) {
  fixtures::Rng rng(24);
  for (std::size_t k = 0; k < 100; ++k) {
    auto fx = fixtures::random_band_fixture(rng, fixtures::field_for(k));
    EXPECT_EQ(verify_squares(fx.map, fx.depth + 3), std::nullopt);
    EXPECT_EQ(verify_squares(fx.relabeled, fx.depth + 3), std::nullopt);
    EXPECT_EQ(fx.relabeled.stationary_from(), fx.cutoff);
    for (Level j = 1; j <= fx.depth; ++j) {
      EXPECT_EQ(fx.relabeled.kernel(j).dim() + oracle::rank(fx.relabeled.level_map(j)),
                fx.relabeled.source()->dim(j));
    }
  }
}
