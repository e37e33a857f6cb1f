#include <random>

#include <benchmark/benchmark.h>

#include "ccm/correlation.hpp"
#include "ccm/search.hpp"
#include "ccm/symmetry.hpp"

namespace {

using namespace ccm;

PhaseMatrix sample_ccm(int n) {
  SearchConfig cfg;
  cfg.n_rows = n;
  return search_ccm(cfg).matrices.back();
}

PhaseMatrix random_quad(int n, int k, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(0, 3);
  std::vector<Exponent> e(static_cast<std::size_t>(n * k));
  for (auto& x : e) x = static_cast<Exponent>(d(rng));
  return PhaseMatrix(4, n, k, std::move(e));
}

void BM_IsCcm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = random_quad(n, 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(is_ccm(m));
}
BENCHMARK(BM_IsCcm)->Arg(4)->Arg(6)->Arg(16);

void BM_CompositeProfile(benchmark::State& state) {
  const auto m = random_quad(static_cast<int>(state.range(0)), 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(composite_profile(m));
}
BENCHMARK(BM_CompositeProfile)->Arg(6)->Arg(32);

void BM_Search(benchmark::State& state) {
  SearchConfig cfg;
  cfg.n_rows = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_ccm(cfg).matrices.size());
}
BENCHMARK(BM_Search)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& state) {
  const auto m = sample_ccm(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(m));
}
BENCHMARK(BM_CanonicalForm)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_OrbitSize(benchmark::State& state) {
  const auto m = sample_ccm(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orbit_size(m));
}
BENCHMARK(BM_OrbitSize)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_Normalize(benchmark::State& state) {
  const auto m = random_quad(6, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(normalize(m));
}
BENCHMARK(BM_Normalize);

}  // namespace
BENCHMARK_MAIN();
