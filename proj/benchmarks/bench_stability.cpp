#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "brickseq/stability.hpp"

using namespace brickseq;

static void BM_StabilityRandom(benchmark::State& state) {
  const BrickAssembly a = bench::random_assembly(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(stability_scores(a));
  state.counters["bricks"] = static_cast<double>(a.size());
}
BENCHMARK(BM_StabilityRandom)->Arg(5)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_StabilityTower(benchmark::State& state) {
  std::vector<Brick> bricks;
  for (int z = 0; z < state.range(0); ++z) bricks.push_back({2, 4, 4, 4, z});
  const BrickAssembly a(bricks);
  for (auto _ : state) benchmark::DoNotOptimize(stability_scores(a));
}
BENCHMARK(BM_StabilityTower)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
