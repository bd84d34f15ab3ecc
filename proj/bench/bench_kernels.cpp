// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "qaperture/observables.hpp"

using namespace qaperture;

namespace {

const Scene& fig2_scene() {
  static const Scene scene = [] {
    AtomSpec atom;
    return Scene::at_focus(BeamSpec{}, atom, 0.01);
  }();
  return scene;
}

ScanConfig scan_config(int count) {
  ScanConfig c;
  c.count = count;
  return c;
}

MapGrid small_grid() { return {-3.0, 3.0, 13, -25.0, 10.0, 15}; }

void BM_AngularScanSerial(benchmark::State& state) {
  const ScanConfig c = scan_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(angular_scan_serial(fig2_scene(), c));
}

void BM_AngularScanParallel(benchmark::State& state) {
  const ScanConfig c = scan_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(angular_scan(fig2_scene(), c));
}

void BM_FocalMapSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(focal_map_serial(BeamSpec{}, small_grid()));
}

void BM_FocalMapParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(focal_map(BeamSpec{}, small_grid()));
}

}  // namespace

BENCHMARK(BM_AngularScanSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AngularScanParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FocalMapSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FocalMapParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
