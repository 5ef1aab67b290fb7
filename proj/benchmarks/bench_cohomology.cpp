#include <benchmark/benchmark.h>

#include "autoclose/closure.hpp"
#include "autoclose/cohomology.hpp"

using namespace autoclose;

namespace {

BarComplex free2_complex() {
  const Field f = Field::prime(3);
  return BarComplex(Representation(GroupModel::free(2), f, 1, {Matrix::from_ints(f, {{2}}), Matrix::from_ints(f, {{1}})}));
}

void BM_ApplyCoboundary(benchmark::State& state) {
  const BarComplex c = free2_complex();
  const std::size_t degree = static_cast<std::size_t>(state.range(0));
  const Level radius = 2;
  const CochainPrefix f{degree - 1, c.read_level(radius), zero_vector(c.field(), c.cochain_dim(degree - 1, c.read_level(radius)))};
  for (auto _ : state) benchmark::DoNotOptimize(c.apply_coboundary(f, radius).values.size());
}
BENCHMARK(BM_ApplyCoboundary)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_KernelStabilizationFree2(benchmark::State& state) {
  const BarComplex c = free2_complex();
  const TowerMap d = c.relabeled_coboundary(1);
  for (auto _ : state) benchmark::DoNotOptimize(stabilization_table(d, 2).back().ell);
}
BENCHMARK(BM_KernelStabilizationFree2)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_FiniteDims(benchmark::State& state) {
  const BarComplex c(Representation::trivial(GroupModel::cyclic(static_cast<std::size_t>(state.range(0))), Field::prime(2), 1));
  for (auto _ : state) benchmark::DoNotOptimize(finite_cohomology_dims(c, 2).cohomology);
}
BENCHMARK(BM_FiniteDims)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
