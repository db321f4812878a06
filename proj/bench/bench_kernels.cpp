#include <benchmark/benchmark.h>

#include "ecmgal/gl2.hpp"
#include "ecmgal/literals.hpp"
#include "ecmgal/scan.hpp"

namespace {

using namespace ecmgal;

void run_scan(benchmark::State& state, ExecPolicy policy) {
  const CurveModel curve = named_curve("E1");
  const u64 bound = u64{1} << state.range(0);
  ScanConfig cfg;
  cfg.policy = policy;
  for (auto _ : state) {
    OrderScan scan = scan_orders(curve, bound, cfg);
    benchmark::DoNotOptimize(scan.orders.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(scan_primes(bound).size()));
}

void BM_ScanOrdersSerial(benchmark::State& state) { run_scan(state, ExecPolicy::Serial); }
void BM_ScanOrdersParallel(benchmark::State& state) { run_scan(state, ExecPolicy::Parallel); }

void BM_ScanShapes(benchmark::State& state) {
  const CurveModel curve = named_curve("E1");
  const u64 bound = u64{1} << state.range(0);
  ScanConfig cfg;
  cfg.policy = state.range(1) ? ExecPolicy::Parallel : ExecPolicy::Serial;
  const OrderScan scan = scan_orders(curve, bound, cfg);
  for (auto _ : state) {
    auto shapes = scan_shapes(curve, scan, 2, 3, cfg);
    benchmark::DoNotOptimize(shapes.data());
  }
}

void BM_EnumerateGL2(benchmark::State& state) {
  for (auto _ : state) {
    auto g = enumerate_group(static_cast<u32>(state.range(0)));
    benchmark::DoNotOptimize(g.data());
  }
}

}  // namespace

BENCHMARK(BM_ScanOrdersSerial)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanOrdersParallel)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanShapes)->Args({14, 0})->Args({14, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateGL2)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
