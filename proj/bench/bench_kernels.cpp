#include <benchmark/benchmark.h>

#include "sudler/bounds.hpp"
#include "sudler/cfrac.hpp"
#include "sudler/kernels.hpp"
#include "sudler/limitfn.hpp"
#include "sudler/orbit.hpp"

namespace {

const sudler::KroneckerOrbit& orbit() {
  static const sudler::KroneckerOrbit o(sudler::fixed_point({1, 4}));
  return o;
}

void BM_LogSineSerial(benchmark::State& state) {
  const long bits = state.range(1);
  const sudler::Real zero(0L, 53);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sudler::log_sine_sum_serial(orbit(), 1, state.range(0), zero, bits).sum.to_double());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LogSineParallel(benchmark::State& state) {
  const long bits = state.range(1);
  const sudler::Real zero(0L, 53);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sudler::log_sine_sum_parallel(orbit(), 1, state.range(0), zero, bits, 0).sum.to_double());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void limit(benchmark::State& state, bool parallel) {
  const auto spec = sudler::spectral(sudler::PeriodSpec{{2, 5}, 2});
  sudler::LimitOptions o;
  o.tol = 1e-10;
  o.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(sudler::g_limit(spec, 0.3, o).value);
}

void BM_LimitSerial(benchmark::State& state) { limit(state, false); }
void BM_LimitParallel(benchmark::State& state) { limit(state, true); }

void BM_Scan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sudler::scan(3, 5, 1e-8, static_cast<int>(state.range(0))).size());
}

}  // namespace

BENCHMARK(BM_LogSineSerial)->Args({100000, 53})->Args({20000, 128})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogSineParallel)->Args({100000, 53})->Args({20000, 128})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LimitSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LimitParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Scan)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
