#include <benchmark/benchmark.h>

#include "autoclose/closure.hpp"
#include "autoclose/counterexamples.hpp"

using namespace autoclose;

namespace {

void BM_StabilizationTableDifference(benchmark::State& state) {
  const TowerMap map = reindex_cofinal(difference_map(Field::prime(3)));
  const Level depth = static_cast<Level>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stabilization_table(map, depth).size());
}
BENCHMARK(BM_StabilizationTableDifference)->Arg(8)->Arg(32);

void BM_Example1OverRationals(benchmark::State& state) {
  const Level depth = static_cast<Level>(state.range(0));
  const auto sys = IntBandSystem::periodic({1, 0}, depth);
  for (auto _ : state) benchmark::DoNotOptimize(example1_over_field(sys, depth, Field::rational()).index());
}
BENCHMARK(BM_Example1OverRationals)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Example1MinNorm(benchmark::State& state) {
  const Level depth = static_cast<Level>(state.range(0));
  const auto sys = IntBandSystem::periodic({1, 0}, depth);
  for (auto _ : state) benchmark::DoNotOptimize(example1_min_norm(sys, depth));
}
BENCHMARK(BM_Example1MinNorm)->Arg(30)->Arg(200);

void BM_Example2(benchmark::State& state) {
  const DensityProbe probe{mpq_class(1, 2), mpq_class(1, 1000)};
  for (auto _ : state) benchmark::DoNotOptimize(example2_approximate(probe).has_value());
}
BENCHMARK(BM_Example2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
