// Microbenchmarks for the hot paths of the survey pipeline.

#include <benchmark/benchmark.h>

#include "qspeed/angleopt.hpp"
#include "qspeed/survey.hpp"

using namespace qspeed;

namespace {

DensityMatrix sample_state() { return sample_separable(42, 0, 8).state; }

MagnetConfig tilted_config() {
    return MagnetConfig{BlochDirection::from_angles(0.7, 1.1), BlochDirection::from_angles(2.1, 4.2)};
}

void bm_evolve(benchmark::State& state) {
    const DensityMatrix rho = sample_state();
    const MagnetConfig cfg = tilted_config();
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(rho, cfg, t));
        t += 1e-4;
    }
}
BENCHMARK(bm_evolve);

void bm_trace_distance(benchmark::State& state) {
    const DensityMatrix rho = sample_state();
    const DensityMatrix sigma = evolve(rho, tilted_config(), 0.7);
    for (auto _ : state) benchmark::DoNotOptimize(trace_distance(rho, sigma));
}
BENCHMARK(bm_trace_distance);

void bm_eig_hermitian(benchmark::State& state) {
    const CMat m = sample_state().mat();
    for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(m));
}
BENCHMARK(bm_eig_hermitian);

void bm_eigvals_fast(benchmark::State& state) {
    const CMat m = sample_state().mat();
    for (auto _ : state) benchmark::DoNotOptimize(eigvals_hermitian(m));
}
BENCHMARK(bm_eigvals_fast);

void bm_objective_period_ddif(benchmark::State& state) {
    const DensityMatrix rho = sample_state();
    const MagnetConfig cfg = tilted_config();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_objective(rho, cfg, ObjectiveKind::period_ddif));
}
BENCHMARK(bm_objective_period_ddif);

void bm_optimize_period_ddif(benchmark::State& state) {
    const DensityMatrix rho = sample_state();
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_angles(rho, ObjectiveKind::period_ddif, 200));
}
BENCHMARK(bm_optimize_period_ddif)->Unit(benchmark::kMillisecond);

void bm_survey_record(benchmark::State& state) {
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(survey_record(42, i++, 200, 8));
}
BENCHMARK(bm_survey_record)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
