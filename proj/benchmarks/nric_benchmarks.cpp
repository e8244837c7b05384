#include <benchmark/benchmark.h>

#include "nric/coil_link.hpp"
#include "nric/design.hpp"
#include "nric/imn.hpp"
#include "nric/spiral.hpp"
#include "nric/tissue.hpp"

using namespace nric;

namespace {

SpiralGeometry first_candidate(double l_target, double area) {
    FabConstraints fab;
    fab.max_area = area;
    return synthesize(l_target, fab, ShapeCoefficients::square()).candidates.front();
}

void BM_Synthesize(benchmark::State& state) {
    FabConstraints fab;
    fab.max_area = 18e-3 * 18e-3;
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(400.4e-9, fab, ShapeCoefficients::square()));
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond);

void BM_EstimateK(benchmark::State& state) {
    const SpiralGeometry tx = first_candidate(400.4e-9, 18e-3 * 18e-3);
    const SpiralGeometry rx = first_candidate(80e-9, 5e-3 * 5e-3);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_k(tx, rx, 10e-3));
}
BENCHMARK(BM_EstimateK)->Unit(benchmark::kMillisecond);

void BM_SweepAnalytic(benchmark::State& state) {
    const CoilPair pair{400e-9, 400e-9, 0.5, 0.5, 0.1};
    const NetworkSource src = analytic_source(pair, default_stack(3.24e-4));
    const auto points = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep(src, {50, 50}, 1e6, 100e6, points, SweepScale::Log));
    state.SetItemsProcessed(state.iterations() * points);
}
BENCHMARK(BM_SweepAnalytic)->Arg(101)->Arg(1001)->Unit(benchmark::kMicrosecond);

void BM_SynthesizeImn(benchmark::State& state) {
    const TwoPort t = coil_abcd({400e-9, 400e-9, 0.5, 0.5, 0.1}, 20e6);
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_imn(t, {50, 50}, 20e6));
}
BENCHMARK(BM_SynthesizeImn)->Unit(benchmark::kMicrosecond);

void BM_RunDesign(benchmark::State& state) {
    const DesignSpec spec = load_design_spec(NRIC_SPEC_DIR "/symmetric_20mhz.json");
    for (auto _ : state) benchmark::DoNotOptimize(run_design(spec));
}
BENCHMARK(BM_RunDesign)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
