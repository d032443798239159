#include "gapsets/dynamics.hpp"
#include "gapsets/families.hpp"
#include "gapsets/periodic.hpp"

#include <benchmark/benchmark.h>

using namespace gapsets;

namespace {

PeriodicGraph rank2_cover() {
  auto p = wbar_a();
  p.rank = 2;
  p.offsets[7] = {1, 0};
  p.offsets[8] = {0, 1};
  return p;
}

void bm_bands_serial(benchmark::State& s) {
  auto p = rank2_cover();
  for (auto _ : s) benchmark::DoNotOptimize(bands_serial(p, static_cast<int>(s.range(0))));
}

void bm_bands_omp(benchmark::State& s) {
  auto p = rank2_cover();
  for (auto _ : s) benchmark::DoNotOptimize(bands(p, static_cast<int>(s.range(0))));
}

void bm_fekete_serial(benchmark::State& s) {
  auto set = preimage_intervals(3).intervals;
  for (auto _ : s) benchmark::DoNotOptimize(fekete_capacity_serial(set, static_cast<int>(s.range(0)), 50));
}

void bm_fekete_omp(benchmark::State& s) {
  auto set = preimage_intervals(3).intervals;
  for (auto _ : s) benchmark::DoNotOptimize(fekete_capacity(set, static_cast<int>(s.range(0)), 50));
}

}  // namespace

BENCHMARK(bm_bands_serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_bands_omp)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fekete_serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fekete_omp)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
