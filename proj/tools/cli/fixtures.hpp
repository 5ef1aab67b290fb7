#pragma once

#include <random>
#include <vector>

#include "problem.hpp"

#include "autoclose/closure.hpp"
#include "autoclose/cohomology.hpp"
#include "autoclose/tower_map.hpp"

namespace autoclose::cli {

/// A tower map in relabeled form plus the target prefix for a solve.
struct SolveFixture {
  TowerMap map;
  std::vector<Vector> w;
  Level depth = 1;
  ClosureOptions options;
};

struct CohomFixture {
  BarComplex complex;
  std::size_t degree = 0;
  std::string mode;
  std::optional<CochainPrefix> cochain;
  Level depth = 1;
  ClosureOptions options;
};

TowerPtr build_tower(const Node& node, Field field);
TowerMap build_map(const Node& node, Field field);
SolveFixture build_solve(const ProblemDocument& doc);
CohomFixture build_cohom(const ProblemDocument& doc);

Scalar random_scalar(std::mt19937_64& rng, Field field);
Vector random_vector(std::mt19937_64& rng, Field field, Index n);

}  // namespace autoclose::cli
