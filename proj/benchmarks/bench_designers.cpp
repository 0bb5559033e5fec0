// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the designer, the gain evaluation, and the numeric
// oracle. The design path is closed form and should stay microseconds even
// at kiloantenna scale; the oracle pays for dense factorizations.
#include <benchmark/benchmark.h>

#include "ttdhp/channel.hpp"
#include "ttdhp/closed_form.hpp"
#include "ttdhp/qp_oracle.hpp"
#include "ttdhp/sweep.hpp"

namespace {

ttdhp::ScenarioParams make_scenario(int nt, int m_ttd) {
    return {ttdhp::OfdmGrid(300e9, 30e9, 129),
            ttdhp::ArrayGeometry::half_wavelength(nt, m_ttd, 1, 300e9),
            {0.8},
            340e-12};
}

void bm_optimal_design(benchmark::State &state) {
    const ttdhp::ScenarioParams sc = make_scenario(static_cast<int>(state.range(0)), 16);
    for (auto _ : state)
        benchmark::DoNotOptimize(ttdhp::optimal_design(sc));
}
BENCHMARK(bm_optimal_design)->Arg(256)->Arg(1024)->Arg(4096);

void bm_baseline_design(benchmark::State &state) {
    const ttdhp::ScenarioParams sc = make_scenario(static_cast<int>(state.range(0)), 16);
    for (auto _ : state)
        benchmark::DoNotOptimize(ttdhp::baseline_design(sc));
}
BENCHMARK(bm_baseline_design)->Arg(256)->Arg(1024)->Arg(4096);

void bm_average_gain(benchmark::State &state) {
    const ttdhp::ScenarioParams sc = make_scenario(static_cast<int>(state.range(0)), 16);
    const ttdhp::HybridDesign design = ttdhp::optimal_design(sc);
    for (auto _ : state)
        benchmark::DoNotOptimize(ttdhp::average_gain(design, sc, 0));
}
BENCHMARK(bm_average_gain)->Arg(256)->Arg(1024);

void bm_effective_beam(benchmark::State &state) {
    const ttdhp::ScenarioParams sc = make_scenario(static_cast<int>(state.range(0)), 16);
    const ttdhp::HybridDesign design = ttdhp::optimal_design(sc);
    for (auto _ : state)
        benchmark::DoNotOptimize(ttdhp::effective_beam(design, sc.grid, 0, 0));
}
BENCHMARK(bm_effective_beam)->Arg(256)->Arg(4096);

void bm_oracle_solve(benchmark::State &state) {
    const ttdhp::ScenarioParams sc = make_scenario(static_cast<int>(state.range(0)), 16);
    const ttdhp::QpInstance inst = ttdhp::build_instance(sc, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(ttdhp::solve_numeric(inst));
}
BENCHMARK(bm_oracle_solve)->Arg(256)->Arg(1024);

void bm_oracle_build(benchmark::State &state) {
    const ttdhp::ScenarioParams sc = make_scenario(static_cast<int>(state.range(0)), 16);
    for (auto _ : state)
        benchmark::DoNotOptimize(ttdhp::build_instance(sc, 0));
}
BENCHMARK(bm_oracle_build)->Arg(256)->Arg(1024);

void bm_squint_profile(benchmark::State &state) {
    const ttdhp::OfdmGrid grid(300e9, 30e9, 129);
    for (auto _ : state)
        benchmark::DoNotOptimize(ttdhp::squint_profile(grid, static_cast<int>(state.range(0)), 0.8));
}
BENCHMARK(bm_squint_profile)->Arg(256)->Arg(1024);

} // namespace

BENCHMARK_MAIN();
