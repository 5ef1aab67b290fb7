#include <benchmark/benchmark.h>

#include <random>

#include "autoclose/linalg.hpp"

using namespace autoclose;

namespace {

Matrix random_matrix(Field f, Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::vector<std::vector<Scalar>> rows(n);
  for (auto& row : rows) {
    for (Index c = 0; c < n; ++c) row.push_back(Scalar(f, coeff(rng)));
  }
  return Matrix::from_dense(f, n, rows);
}

void BM_RrefRational(benchmark::State& state) {
  const Matrix a = random_matrix(Field::rational(), static_cast<Index>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rref(a).rank);
}
BENCHMARK(BM_RrefRational)->Arg(8)->Arg(16)->Arg(32);

void BM_RrefPrime(benchmark::State& state) {
  const Matrix a = random_matrix(Field::prime(1000003), static_cast<Index>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rref(a).rank);
}
BENCHMARK(BM_RrefPrime)->Arg(16)->Arg(64)->Arg(128);

void BM_KernelBasis(benchmark::State& state) {
  const Field f = Field::prime(7);
  const Index n = static_cast<Index>(state.range(0));
  const Matrix a = random_matrix(f, n, 3);
  const Matrix stacked = Matrix::stack(a, a);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(stacked.transpose()).dim());
}
BENCHMARK(BM_KernelBasis)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
