#include <benchmark/benchmark.h>

#include "opsys/certificates.hpp"
#include "opsys/maps.hpp"
#include "opsys/norm.hpp"
#include "opsys/sampling.hpp"

using namespace opsys;

static void BM_HermitianEigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Sampler s(1);
  const Matrix h = s.gaussian(n, Field::Complex).hermitian_part();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(h));
}
BENCHMARK(BM_HermitianEigenvalues)->RangeMultiplier(2)->Range(4, 64);

static void BM_IsPsd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Sampler s(2);
  const Matrix p = s.wishart(n, Field::Complex);
  for (auto _ : state) benchmark::DoNotOptimize(is_psd(p));
}
BENCHMARK(BM_IsPsd)->RangeMultiplier(2)->Range(4, 64);

static void BM_CriterionVsEigenvalues(benchmark::State& state) {
  const SystemId sys{SystemKind::FreeCorner, static_cast<std::size_t>(state.range(0))};
  const SystemElement e = random_positive_element(sys, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_positive_by_criterion(e));
    benchmark::DoNotOptimize(is_psd(embed(e)));
  }
}
BENCHMARK(BM_CriterionVsEigenvalues)->DenseRange(2, 8, 2);

static void BM_ApplyMap(benchmark::State& state) {
  const MapId m{MapKind::CornerTranspose, static_cast<std::size_t>(state.range(0))};
  const Matrix x = embed(random_element(*m.domain(), 4));
  for (auto _ : state) benchmark::DoNotOptimize(apply(m, x));
}
BENCHMARK(BM_ApplyMap)->RangeMultiplier(2)->Range(2, 32);

static void BM_SwapSingularCheck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(swap_bc_singular_check(n, 10, 5));
}
BENCHMARK(BM_SwapSingularCheck)->DenseRange(1, 8, 1);

static void BM_NormSearchPairSwap(benchmark::State& state) {
  const MapId m{MapKind::PairSwapComplex, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_map_norm(m, 5, 6));
}
BENCHMARK(BM_NormSearchPairSwap)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

static void BM_CertifyCornerTranspose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify_gamma_unextendible(n, 7));
}
BENCHMARK(BM_CertifyCornerTranspose)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
