#include <benchmark/benchmark.h>

#include "quasitrace/dynamics/abel.hpp"
#include "quasitrace/dynamics/truncation.hpp"
#include "quasitrace/spectrum/bands.hpp"
#include "quasitrace/transfer/transfer.hpp"
#include "quasitrace/words/combinatorics.hpp"
#include "quasitrace/words/fibonacci.hpp"
#include "quasitrace/words/phase.hpp"

using namespace quasitrace;

static void BM_FibWord(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(words::fib_word(k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words::fib_length(k)));
}
BENCHMARK(BM_FibWord)->Arg(20)->Arg(30);

static void BM_RotationBlock(benchmark::State& state) {
  const auto theta = words::PhasePoint::parse("0.739");
  for (auto _ : state) benchmark::DoNotOptimize(words::rotation_block(1, state.range(0), theta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RotationBlock)->Arg(1 << 16);

static void BM_Subwords(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(words::subwords(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Subwords)->Arg(100)->Arg(500);

static void BM_TraceLevels(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transfer::trace_levels(k, 1.3, 10, words::PhasePoint{}));
}
BENCHMARK(BM_TraceLevels)->Arg(14)->Arg(20);

static void BM_TraceDerivative(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(transfer::trace_derivative(static_cast<int>(state.range(0)), 1.3, 10,
                                                        words::PhasePoint::parse("1/3")));
}
BENCHMARK(BM_TraceDerivative)->Arg(14);

static void BM_BandLevels(benchmark::State& state) {
  spectrum::BandScanOptions opts;
  opts.check_refinement = false;
  for (auto _ : state) benchmark::DoNotOptimize(spectrum::band_levels(static_cast<int>(state.range(0)), 10, opts));
}
BENCHMARK(BM_BandLevels)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_Diagonalize(benchmark::State& state) {
  const auto h = dynamics::build_truncation(static_cast<int>(state.range(0)), 10, words::PhasePoint{});
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::diagonalize(h));
}
BENCHMARK(BM_Diagonalize)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_AbelClosedForm(benchmark::State& state) {
  const auto sys = dynamics::diagonalize(dynamics::build_truncation(static_cast<int>(state.range(0)), 10,
                                                                    words::PhasePoint{}));
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::abel_closed_form(sys, 1, 100));
}
BENCHMARK(BM_AbelClosedForm)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
