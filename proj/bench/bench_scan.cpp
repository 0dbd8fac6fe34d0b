// Serial reference vs OpenMP exclusion scan over the same window.

#include <benchmark/benchmark.h>

#include "liouville/selfpower.hpp"

namespace {

using liouville::BigRational;
using liouville::IntervalReal;

const IntervalReal& xi() {
  static const IntervalReal x(BigRational(7, 10));
  return x;
}

void BM_ScanSerial(benchmark::State& state) {
  const long b_max = state.range(0);
  for (auto _ : state) {
    auto r = liouville::non_liouville_scan_serial(xi(), BigRational(5, 2), b_max);
    benchmark::DoNotOptimize(r.violations.data());
  }
  state.SetItemsProcessed(state.iterations() * b_max);
}

void BM_ScanParallel(benchmark::State& state) {
  const long b_max = state.range(0);
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto r = liouville::non_liouville_scan(xi(), BigRational(5, 2), b_max, jobs);
    benchmark::DoNotOptimize(r.violations.data());
  }
  state.SetItemsProcessed(state.iterations() * b_max);
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Args({1000, 0})->Args({10000, 0})->Args({10000, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
