#include <benchmark/benchmark.h>

#include <numbers>

#include "mwl/chernoff.hpp"
#include "mwl/graph.hpp"
#include "mwl/spectral.hpp"
#include "mwl/walk.hpp"

using namespace mwl;

static void BM_BuildGraph(benchmark::State& state) {
  const auto s = uniform_circle(static_cast<int>(state.range(0)), 1.0, 0.126);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_graph(s, 0.504));
  }
}
BENCHMARK(BM_BuildGraph)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_TransitionSpectrum(benchmark::State& state) {
  const auto g = build_graph(uniform_circle(static_cast<int>(state.range(0)), 1.0, 0.126),
                             0.504);
  const auto m = assemble_matrices(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transition_spectrum(m));
  }
}
BENCHMARK(BM_TransitionSpectrum)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_WalkStatistic(benchmark::State& state) {
  const auto g = build_graph(uniform_circle(60, 1.0, 0.2), 0.8);
  const auto m = assemble_matrices(g);
  const auto obs = make_observables(ObservableKind::random, 60, TensorShape{{2, 2}},
                                    1.0, 1);
  const PolynomialSpec identity({0.0, 1.0}, 1);
  const auto walk = sample_walk(m, static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(walk_statistic(walk, obs, identity, 1));
  }
}
BENCHMARK(BM_WalkStatistic)->Arg(4)->Arg(64);

static void BM_MinimizeBound(benchmark::State& state) {
  BoundParams p;
  p.walk_length = 4;
  p.observable_bound = 1.0;
  p.poly = PolynomialSpec({0.1, 1.0, 0.3}, 2);
  p.shape = TensorShape{{2, 2}};
  p.theta = 24.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_bound(p, 0.01));
  }
}
BENCHMARK(BM_MinimizeBound);

static void BM_EstimateTail(benchmark::State& state) {
  const auto g = build_graph(uniform_circle(60, 1.0, 0.2), 0.8);
  const auto m = assemble_matrices(g);
  const auto obs = make_observables(ObservableKind::random, 60, TensorShape{{2, 2}},
                                    1.0, 1);
  const PolynomialSpec identity({0.0, 1.0}, 1);
  const std::vector<double> thetas = {1.0, 2.0, 3.0, 4.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_tail(m, obs, identity, 4, static_cast<int>(state.range(0)), thetas,
                      1, 42));
  }
}
BENCHMARK(BM_EstimateTail)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
