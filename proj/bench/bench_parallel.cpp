// Serial reference vs OpenMP kernels for the two data-parallel workloads.

#include "trotter/evaluate.hpp"

#include <benchmark/benchmark.h>

using namespace trotter;

namespace {

void bench_sweep(benchmark::State& state, bool parallel) {
  const auto spec = linalg::HamiltonianSpec::named("tfi2", {12, 8});
  const auto grid = evaluate::log_grid(1e-3, 3e-1, 120);
  for (auto _ : state) {
    auto curves = evaluate::sweep_time({"2O", "2D", "2T"}, spec, grid, 1, parallel);
    benchmark::DoNotOptimize(curves);
  }
}

void bench_histogram(benchmark::State& state, bool parallel) {
  for (auto _ : state) {
    auto stats = evaluate::crossover_histogram(12, 8, 1, 24, 42, 4, parallel);
    benchmark::DoNotOptimize(stats);
  }
}

void BM_sweep_serial(benchmark::State& state) { bench_sweep(state, false); }
void BM_sweep_openmp(benchmark::State& state) { bench_sweep(state, true); }
void BM_histogram_serial(benchmark::State& state) { bench_histogram(state, false); }
void BM_histogram_openmp(benchmark::State& state) { bench_histogram(state, true); }

BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_openmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_histogram_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_histogram_openmp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
