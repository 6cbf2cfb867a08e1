#include <benchmark/benchmark.h>

#include "broomkit/generate.hpp"
#include "broomkit/kernels.hpp"

using namespace broomkit;

namespace {

Exec mode(const benchmark::State& s) { return s.range(0) == 0 ? Exec::serial : Exec::parallel; }

const BroomDigraph& instance() {
  static const BroomDigraph b = gen_broom_digraph(3, 4, 20'000, {}, 1);
  return b;
}

void BM_TypeCodes(benchmark::State& state) {
  const auto& b = instance();
  for (auto _ : state) benchmark::DoNotOptimize(type_codes(b, 3, mode(state)));
  state.SetLabel(mode(state) == Exec::serial ? "serial" : "parallel");
}

void BM_ScanHighDegree(benchmark::State& state) {
  const auto& b = instance();
  for (auto _ : state) benchmark::DoNotOptimize(scan_high_degree(b, mode(state)));
  state.SetLabel(mode(state) == Exec::serial ? "serial" : "parallel");
}

void BM_GenOutRegular(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen_out_regular(50'000, 32, 3, mode(state)));
  state.SetLabel(mode(state) == Exec::serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_TypeCodes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanHighDegree)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenOutRegular)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
