#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "brickseq/tokenizer.hpp"

using namespace brickseq;

static void BM_Tokenize(benchmark::State& state) {
  const BrickAssembly a = bench::random_assembly(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(a));
  state.counters["bricks"] = static_cast<double>(a.size());
}
BENCHMARK(BM_Tokenize)->Arg(10)->Arg(50)->Arg(150);

static void BM_Detokenize(benchmark::State& state) {
  const TokenSequence s = tokenize(bench::random_assembly(static_cast<int>(state.range(0)), 11));
  for (auto _ : state) benchmark::DoNotOptimize(detokenize(s));
  state.counters["tokens"] = static_cast<double>(s.size());
}
BENCHMARK(BM_Detokenize)->Arg(10)->Arg(50)->Arg(150);
