#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "brickseq/geometry.hpp"

using namespace brickseq;

static void BM_GreedyBox(benchmark::State& state) {
  VoxelGrid target;
  const int side = static_cast<int>(state.range(0));
  for (int z = 0; z < side; ++z)
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x) target.set({x, y, z});
  GreedyGeometryPolicy greedy;
  DecodeBudgets budgets;
  budgets.max_rollbacks = 2;
  for (auto _ : state) benchmark::DoNotOptimize(generate(greedy, target, budgets));
}
BENCHMARK(BM_GreedyBox)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_UniformGenerate(benchmark::State& state) {
  UniformLegalPolicy uniform;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate(uniform, VoxelGrid{}, {16, 2, 40}, {}, seed++));
}
BENCHMARK(BM_UniformGenerate)->Unit(benchmark::kMillisecond);
