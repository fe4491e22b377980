#include <benchmark/benchmark.h>

#include <random>

#include "matgeo/homs.hpp"

using namespace matgeo;

namespace {

kernels::Exec exec_of(const benchmark::State& st) {
  return st.range(0) ? kernels::Exec::Parallel : kernels::Exec::Serial;
}

const MapTable& standard_fixture() {
  static MapTable t = [] {
    std::mt19937_64 rng(1);
    return standard_table(
        random_valid_params(Field::get(2, 2), Field::get(2, 4), 2, 2, 3, 3, Orientation::Straight, rng));
  }();
  return t;
}

const MapTable& colouring_fixture() {
  static MapTable t = build_witness_hom(4, 2, 2, 4, 2, 2);
  return t;
}

void BM_DistanceScan(benchmark::State& st) {
  MatSpace sp(Field::get(2, 2), 2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::distance_scan(sp, exec_of(st)));
}

void BM_HomViolations(benchmark::State& st) {
  const MapTable& f = standard_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::hom_violations(f, exec_of(st)));
}

void BM_SampledHomViolations(benchmark::State& st) {
  const MapTable& f = standard_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sampled_hom_violations(f, 100000, 7, exec_of(st)));
}

void BM_DegenerateCenterMiss(benchmark::State& st) {
  const MapTable& f = standard_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::first_degenerate_center(f, exec_of(st)));
}

void BM_DegenerateCenterHit(benchmark::State& st) {
  const MapTable& f = colouring_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::first_degenerate_center(f, exec_of(st)));
}

}  // namespace

// argument 0 runs the serial reference, 1 the OpenMP kernel
BENCHMARK(BM_DistanceScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomViolations)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampledHomViolations)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DegenerateCenterMiss)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DegenerateCenterHit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
