#include <benchmark/benchmark.h>

#include "direst/static_direct.hpp"

namespace {

// Selection cost on a partition grown to the given iteration count.
void BM_identify_potentially_optimal(benchmark::State& state) {
  const auto fn = direst::make_cost_function("sphere", {0.61, 0.34});
  const auto res =
      direst::run_static_direct(fn, 2, state.range(0), {0.61, 0.34});
  for (auto _ : state) {
    benchmark::DoNotOptimize(res.partition.identify_potentially_optimal());
  }
  state.counters["rects"] = static_cast<double>(res.partition.rects().size());
}
BENCHMARK(BM_identify_potentially_optimal)->Arg(10)->Arg(50)->Arg(200);

// Whole synchronous minimization runs, dominated by division bookkeeping.
void BM_static_run(benchmark::State& state) {
  const auto fn = direst::make_cost_function("sphere", {0.61, 0.34});
  for (auto _ : state) {
    benchmark::DoNotOptimize(direst::run_static_direct(fn, 2, state.range(0), {0.61, 0.34}));
  }
}
BENCHMARK(BM_static_run)->Arg(10)->Arg(50);

void BM_exact_tiling_check(benchmark::State& state) {
  const auto fn = direst::make_cost_function("sphere", {0.61, 0.34});
  const auto res = direst::run_static_direct(fn, 2, state.range(0), {0.61, 0.34});
  for (auto _ : state) {
    benchmark::DoNotOptimize(res.partition.volume_sums_to_one());
  }
}
BENCHMARK(BM_exact_tiling_check)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
