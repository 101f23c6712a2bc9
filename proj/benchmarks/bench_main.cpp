#include <benchmark/benchmark.h>

#include <random>

#include "hlab/attractor.hpp"
#include "hlab/ifs.hpp"
#include "hlab/lattice.hpp"
#include "hlab/metric.hpp"

namespace {

using namespace hlab;

PointCloud random_cloud(std::size_t dim, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> flat(dim * n);
  for (double& x : flat) x = u(rng);
  return PointCloud(dim, std::move(flat));
}

IifsSpec three_corners() {
  std::vector<IndexedMap> maps;
  const double offsets[3][2] = {{0.0, 0.0}, {0.75, 0.0}, {0.375, 0.75}};
  for (int k = 0; k < 3; ++k) {
    maps.push_back({std::to_string(k + 1), AffineContraction(2, {0.25, 0, 0, 0.25}, {offsets[k][0], offsets[k][1]}, 0.25),
                    std::nullopt});
  }
  return IifsSpec(Box({0, 0}, {1, 1}), std::move(maps));
}

// Below the grid threshold the search is brute force; above it, grid indexed.
void BM_Hausdorff2D(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  PointCloud a = random_cloud(2, n, 1);
  PointCloud b = random_cloud(2, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_dist(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hausdorff2D)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

void BM_EpsilonPrune(benchmark::State& state) {
  PointCloud a = random_cloud(2, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(epsilon_prune(a, 1e-3));
}
BENCHMARK(BM_EpsilonPrune)->Arg(1 << 12)->Arg(1 << 16);

void BM_HbStep(benchmark::State& state) {
  IifsSpec s = three_corners();
  IterationOptions opts;
  opts.steps = static_cast<std::size_t>(state.range(0));
  PointCloud a = iterate_attractor(s, opts).cloud;
  for (auto _ : state) benchmark::DoNotOptimize(hb_step(s, a));
  state.counters["points"] = static_cast<double>(a.size());
}
BENCHMARK(BM_HbStep)->DenseRange(6, 10, 2);

void BM_IterateCantorExact(benchmark::State& state) {
  IifsSpec s = IifsSpec::exact_1d(ExactInterval{0, 1}, {{Rational(1, 3), 0}, {Rational(1, 3), Rational(2, 3)}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate_attractor_exact(s, RationalCloud({Rational(0)}), static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_IterateCantorExact)->Arg(8)->Arg(12);

void BM_TkGfp(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  std::vector<std::vector<std::size_t>> tables(3, std::vector<std::size_t>(n));
  for (auto& t : tables) {
    for (std::size_t& y : t) y = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  SelfMapTable maps(FiniteUniverse(labels), {"1", "2", "3"}, tables);
  for (auto _ : state) benchmark::DoNotOptimize(tk_gfp(maps));
}
BENCHMARK(BM_TkGfp)->Arg(16)->Arg(1024)->Arg(1 << 14);

void BM_BruteForceFixedSubsets(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  std::vector<std::size_t> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = (k + 1) % n;
  SelfMapTable maps(FiniteUniverse(labels), {"1"}, {t});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_fixed_subsets(maps));
}
BENCHMARK(BM_BruteForceFixedSubsets)->Arg(8)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
