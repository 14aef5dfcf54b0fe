// Microbenchmarks for the hot paths: master-equation action, generator
// assembly, stationary states, stencil evolutions and fidelities.

#include <benchmark/benchmark.h>

#include <contsense/correlators.hpp>
#include <contsense/qfi.hpp>

using namespace contsense;

namespace {

SensorModel model_of_size(int n) { return high_temperature(n, 1.0); }

void bm_rhs_action(benchmark::State& state) {
    const SensorModel model = model_of_size(static_cast<int>(state.range(0)));
    const Matrix rho = steady_state(model);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lindblad_rhs(model, 0.1, rho));
    }
}

void bm_superoperator(benchmark::State& state) {
    const SensorModel model = model_of_size(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_superoperator(model, 0.1));
    }
}

void bm_steady_state(benchmark::State& state) {
    const SensorModel model =
        spin_squeezer(static_cast<int>(state.range(0)), 1.0, 1.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_state(model));
    }
}

void bm_evolve_embedded(benchmark::State& state) {
    const SensorModel model = model_of_size(static_cast<int>(state.range(0)));
    TwoSidedOptions opt;
    opt.tol = 1e-8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_embedded(model, 1e-3, 1.0, opt));
    }
}

void bm_fidelity_env(benchmark::State& state) {
    const SensorModel model = model_of_size(static_cast<int>(state.range(0)));
    TwoSidedOptions opt;
    opt.tol = 1e-8;
    const PseudoState st = evolve_embedded(model, 1e-3, 1.0, opt);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fidelity_env(st));
    }
}

void bm_correlator_grid(benchmark::State& state) {
    const SensorModel model = model_of_size(static_cast<int>(state.range(0)));
    Eigen::VectorXd times(201);
    for (int i = 0; i < times.size(); ++i) times(i) = 2.0 * i / (times.size() - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(autocorrelator_numeric(model, times, 1e-8));
    }
}

}  // namespace

BENCHMARK(bm_rhs_action)->Arg(8)->Arg(32)->Arg(64);
BENCHMARK(bm_superoperator)->Arg(8)->Arg(32);
BENCHMARK(bm_steady_state)->Arg(8)->Arg(32)->Arg(64);
BENCHMARK(bm_evolve_embedded)->Arg(2)->Arg(6)->Arg(12);
BENCHMARK(bm_fidelity_env)->Arg(2)->Arg(6)->Arg(12);
BENCHMARK(bm_correlator_grid)->Arg(2)->Arg(6)->Arg(12);

BENCHMARK_MAIN();
