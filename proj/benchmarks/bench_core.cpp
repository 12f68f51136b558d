#include <benchmark/benchmark.h>

#include "nucswitch/dynamics.hpp"
#include "nucswitch/steadystate.hpp"
#include "nucswitch/sweeps.hpp"

using namespace nucswitch;

namespace {

const DriveConditions kBistable{2.0, 0.28, -0.45, Helicity::sigma_minus};

void BM_RateEquation(benchmark::State& state) {
    const RateEquation f(ModelParams{}, kBistable);
    double b = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f(b));
        b += 1e-9;
    }
}
BENCHMARK(BM_RateEquation);

void BM_FindFixedPoints(benchmark::State& state) {
    const ModelParams p;
    RootSearch s;
    s.grid_n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(find_fixed_points(p, kBistable, s));
}
BENCHMARK(BM_FindFixedPoints)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Relax(benchmark::State& state) {
    const ModelParams p;
    for (auto _ : state) benchmark::DoNotOptimize(relax(p, kBistable, 0.0));
}
BENCHMARK(BM_Relax)->Unit(benchmark::kMillisecond);

void BM_PowerSweep(benchmark::State& state) {
    const ModelParams p;
    SweepSpec s;
    s.stop = 0.6;
    s.steps = 61;
    s.fixed = kBistable;
    for (auto _ : state) benchmark::DoNotOptimize(run_hysteresis(p, s));
}
BENCHMARK(BM_PowerSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
