// Microbenchmarks for the hot paths: placement, constraint counting, and
// sampling.  Counters report points (or pairs) per second so runs at
// different sizes are comparable.

#include <benchmark/benchmark.h>

#include "topicgrids/bench.hpp"
#include "topicgrids/metrics.hpp"
#include "topicgrids/rng.hpp"
#include "topicgrids/samplers.hpp"
#include "topicgrids/split_diffuse.hpp"

#include <cmath>
#include <numbers>

using namespace topicgrids;

namespace {

LayoutShape square_layout(std::int64_t n) {
  const int side = static_cast<int>(std::lround(std::sqrt(double(n))));
  return LayoutShape{{side, side}};
}

void BM_split_diffuse(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const PointCloud cloud = sample_uniform(n, 1.0, 42);
  const LayoutShape layout = square_layout(n);
  for (auto _ : state) {
    GridAssignment asg = split_diffuse(cloud, layout);
    benchmark::DoNotOptimize(asg.cells.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_split_diffuse)->RangeMultiplier(4)->Range(64, 4096);

void BM_split_diffuse_iterative(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const PointCloud cloud = sample_uniform(n, 1.0, 42);
  const LayoutShape layout = square_layout(n);
  const SplitStrategy strategy = SplitStrategy::parse("iterative");
  for (auto _ : state) {
    GridAssignment asg = split_diffuse(cloud, layout, strategy);
    benchmark::DoNotOptimize(asg.cells.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_split_diffuse_iterative)->RangeMultiplier(4)->Range(64, 4096);

void BM_evaluate(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const PointCloud cloud = sample_uniform(n, 1.0, 42);
  const LayoutShape layout = square_layout(n);
  const GridAssignment asg = split_diffuse(cloud, layout);
  std::int64_t sink = 0;
  for (auto _ : state) {
    ErrorReport report = evaluate(cloud, asg);
    sink += report.type1_total();
    benchmark::DoNotOptimize(sink);
  }
  // pairs per second, times dimensions, is the true work rate
  state.SetItemsProcessed(state.iterations() * (n * (n - 1) / 2) * 2);
}
BENCHMARK(BM_evaluate)->RangeMultiplier(4)->Range(64, 1024);

void BM_sample_uniform(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    PointCloud cloud = sample_uniform(n, 2.0, seed++);
    benchmark::DoNotOptimize(cloud.coords.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_sample_uniform)->Arg(4096);

void BM_sample_gaussian(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    PointCloud cloud = sample_gaussian(n, std::numbers::pi / 4, 2.0, seed++);
    benchmark::DoNotOptimize(cloud.coords.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_sample_gaussian)->Arg(4096);

void BM_trial(benchmark::State& state) {
  // one full benchmark trial: sample, place, evaluate
  const std::int64_t n = state.range(0);
  const LayoutShape layout = square_layout(n);
  SamplerSpec spec;
  spec.family = SamplerSpec::Family::gaussian;
  spec.theta = std::numbers::pi / 4;
  spec.phi = 2.0;
  int t = 0;
  for (auto _ : state) {
    auto results = run_trial_series(layout, spec, SplitStrategy{}, 1,
                                    static_cast<std::uint64_t>(t++));
    benchmark::DoNotOptimize(results.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_trial)->RangeMultiplier(4)->Range(64, 1024);

}  // namespace

BENCHMARK_MAIN();
