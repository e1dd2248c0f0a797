// Serial reference vs OpenMP paths of the pairwise and resampling kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "shapeforge/elastic.hpp"
#include "shapeforge/hypothesis.hpp"
#include "shapeforge/kernels.hpp"
#include "shapeforge/shape_core.hpp"

using namespace shapeforge;

namespace {

PointList blob(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coef(-0.15, 0.15);
  const double a2 = coef(rng), b3 = coef(rng), a5 = coef(rng);
  PointList pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    const double r = 1.0 + a2 * std::cos(2 * t) + b3 * std::sin(3 * t) + a5 * std::cos(5 * t);
    pts[i] = {r * std::cos(t), r * std::sin(t)};
  }
  return pts;
}

std::vector<PreShape> shapes(std::size_t count, std::size_t n) {
  std::mt19937_64 rng(7);
  std::vector<PreShape> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(to_preshape(Configuration(blob(rng, n))));
  return out;
}

std::vector<SrvfCurve> srvfs(std::size_t count, std::size_t n) {
  std::mt19937_64 rng(11);
  std::vector<SrvfCurve> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(elastic_srvf(DiscreteCurve(blob(rng, n))));
  return out;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_ProcrustesMatrix(benchmark::State& state) {
  const auto data = shapes(static_cast<std::size_t>(state.range(1)), 100);
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(data, mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_ProcrustesMatrix)->Args({0, 200})->Args({1, 200})->Unit(benchmark::kMillisecond);

void BM_ElasticMatrix(benchmark::State& state) {
  const auto data = srvfs(static_cast<std::size_t>(state.range(1)), 100);
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(data, {}, mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_ElasticMatrix)->Args({0, 12})->Args({1, 12})->Unit(benchmark::kMillisecond);

void BM_ElasticMatch(benchmark::State& state) {
  const auto data = srvfs(2, static_cast<std::size_t>(state.range(1)));
  ElasticOptions options;
  options.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(align_srvf(data[0], data[1], options));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_ElasticMatch)->Args({0, 100})->Args({1, 100})->Args({0, 200})->Args({1, 200})->Unit(benchmark::kMillisecond);

void BM_PermutationTest(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(60), b(60);
  for (auto& v : a) v = g(rng);
  for (auto& v : b) v = g(rng) + 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(permutation_test(a, b, 99999, 42, mode(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_PermutationTest)->Args({0, 0})->Args({1, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
