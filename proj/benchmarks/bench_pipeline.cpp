#include <benchmark/benchmark.h>

#include "twocenter/invariants.hpp"

using namespace twocenter;

namespace {

const TorusData& torus32() {
    static const TorusData torus = find_torus({0.5, -0.5}, 3, 2);
    return torus;
}

void BM_find_torus(benchmark::State& state) {
    const EulerParams params{0.5, -0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_torus(params, static_cast<int>(state.range(0)),
                                            static_cast<int>(state.range(1))));
    }
}
BENCHMARK(BM_find_torus)->Args({3, 2})->Args({5, 4});

void BM_trace_orbit(benchmark::State& state) {
    const TorusData& torus = torus32();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            trace_orbit(torus, generic_phase(torus), static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_trace_orbit)->Arg(256)->Arg(512)->Arg(1024);

void BM_double_points(benchmark::State& state) {
    const TorusData& torus = torus32();
    const OrbitTrace trace = trace_orbit(torus, generic_phase(torus),
                                         static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_double_points(trace.curve));
    }
}
BENCHMARK(BM_double_points)->Arg(256)->Arg(1024);

void BM_curve_invariants(benchmark::State& state) {
    const TorusData& torus = torus32();
    const OrbitTrace trace = trace_orbit(torus, generic_phase(torus), 512);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_curve_invariants(trace.curve, torus.params));
    }
}
BENCHMARK(BM_curve_invariants);

void BM_verify_torus(benchmark::State& state) {
    const EulerParams params{0.5, -0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_torus(params, 3, 2));
    }
}
BENCHMARK(BM_verify_torus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
