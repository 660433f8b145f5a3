#include <benchmark/benchmark.h>

#include "brickseq/geometry.hpp"
#include "brickseq/rng.hpp"

using namespace brickseq;

namespace {

PointCloud cloud(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i) c.points.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
  return c;
}

VoxelGrid blob(double density) {
  Rng rng(3);
  VoxelGrid g;
  for (int z = 0; z < kWorkspace; ++z)
    for (int y = 0; y < kWorkspace; ++y)
      for (int x = 0; x < kWorkspace; ++x)
        if (rng.uniform() < density) g.set({x, y, z});
  return g;
}

}  // namespace

static void BM_Chamfer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PointCloud p = cloud(n, 1), q = cloud(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(chamfer(p, q));
}
BENCHMARK(BM_Chamfer)->Arg(200)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

static void BM_MarchingCubes(benchmark::State& state) {
  const VoxelGrid g = blob(state.range(0) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(marching_cubes(g));
}
BENCHMARK(BM_MarchingCubes)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_SampleSurface(benchmark::State& state) {
  const SurfaceMesh m = marching_cubes(blob(0.5));
  for (auto _ : state) benchmark::DoNotOptimize(sample_surface(m, 8192, 7));
}
BENCHMARK(BM_SampleSurface)->Unit(benchmark::kMillisecond);

static void BM_VoxelizePoints(benchmark::State& state) {
  const PointCloud c = cloud(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(voxelize_points(c, true));
}
BENCHMARK(BM_VoxelizePoints)->Arg(1000)->Arg(20000);
