#include <random>

#include <benchmark/benchmark.h>

#include "neurochaos/chaos.hpp"
#include "neurochaos/chaosfex.hpp"
#include "neurochaos/dataio.hpp"
#include "neurochaos/layer.hpp"
#include "neurochaos/tune.hpp"

using namespace neurochaos;

namespace {

Matrix uniform_matrix(std::size_t m, std::size_t n) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix X(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) X(i, j) = u(gen);
  return X;
}

void BM_MapStep(benchmark::State& state) {
  const auto map = state.range(0) ? ChaoticMap::logistic() : ChaoticMap::skew_tent(0.185);
  double x = 0.123;
  for (auto _ : state) {
    x = map(x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_MapStep)->Arg(0)->Arg(1)->ArgNames({"logistic"});

void BM_GenerateTrace(benchmark::State& state) {
  const auto map = ChaoticMap::skew_tent(0.185);
  const double eps = 1.0 / static_cast<double>(state.range(0));
  std::size_t steps = 0;
  for (auto _ : state) {
    const auto t = generate_trace(map, 0.062, 0.71, eps, kDefaultIterationCap);
    steps += t.firing_time;
    benchmark::DoNotOptimize(t.values.data());
  }
  state.counters["steps/trace"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_GenerateTrace)->Arg(4)->Arg(100)->Arg(1000)->ArgNames({"inv_eps"});

void BM_Transform(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto X = uniform_matrix(rows, 13);
  const auto layout = build_layout(13, LayoutScheme::RandomHeterogeneous, 0.25, 7);
  const Hyperparams hp{0.062, 0.185, static_cast<double>(state.range(1)) / 1000.0};
  TransformOptions opts;
  opts.threads = static_cast<unsigned>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(transform(X, layout, hp, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(rows * 13));
}
BENCHMARK(BM_Transform)
    ->Args({178, 298, 1})
    ->Args({178, 10, 1})
    ->Args({1000, 10, 1})
    ->Args({1000, 10, 0})
    ->ArgNames({"rows", "eps_milli", "threads"})
    ->Unit(benchmark::kMillisecond);

void BM_GridPoint(benchmark::State& state) {
  const auto data = normalize(make_gaussian_classes({3, 50, 4, 1.0}, 3));
  const auto layout = build_layout(4, LayoutScheme::RandomHeterogeneous, 0.25, 1);
  const auto folds = stratified_folds(data.y, 5, 9);
  TuneOptions opts;
  const Hyperparams hp{0.062, 0.185, static_cast<double>(state.range(0)) / 1000.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_point(data.X, data.y, data.num_classes(), layout, hp, folds, opts));
  }
}
BENCHMARK(BM_GridPoint)->Arg(298)->Arg(10)->ArgNames({"eps_milli"})->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
