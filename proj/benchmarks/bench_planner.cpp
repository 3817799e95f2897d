#include <benchmark/benchmark.h>

#include <jerkseg/baselines.hpp>
#include <jerkseg/oracle.hpp>
#include <jerkseg/planner.hpp>
#include <jerkseg/switching.hpp>

namespace {

using namespace jerkseg;

system_params machine() { return {25.0, 500.0, 15e6, 5e3}; }

void plan_double_48(benchmark::State& state) {
    const auto sys = machine();
    planner_settings st;
    st.record_trace = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(plan_segment(sys, 20.0, 800.0, st));
    }
}

void plan_float_18(benchmark::State& state) {
    const auto sys = machine();
    planner_settings st;
    st.n_iter = 18;
    st.single_precision = true;
    st.record_trace = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(plan_segment(sys, 20.0, 800.0, st));
    }
}

void plan_with_table(benchmark::State& state) {
    const auto sys = machine();
    planner_settings st;
    st.use_table = true;
    st.record_trace = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(plan_segment(sys, 20.0, 800.0, st));
    }
}

void structure_solve(benchmark::State& state) {
    const auto dp = derive_params(machine());
    const double a_star = dp.omega_d * 20.0 / 800.0;
    double phi = a_star + 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_structure(phi, a_star, dp.p1));
    }
}

void base_response_eval(benchmark::State& state) {
    const auto dp = derive_params(machine());
    const jerk_profile prof(
        {{0.0, 800.0}, {0.0149, -1600.0}, {0.0179, 1600.0}, {0.031, -800.0}});
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(base_response(prof, t, dp));
        t += 1e-5;
        if (t > 0.031) t = 0.0;
    }
}

void rk4_run(benchmark::State& state) {
    const auto sys = machine();
    const jerk_profile prof(
        {{0.0, 800.0}, {0.0149, -1600.0}, {0.0179, 1600.0}, {0.031, -800.0}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(rk4_integrate(sys, prof, 1e-5, 0.031));
    }
    state.SetItemsProcessed(state.iterations() * 3100);
}

}  // namespace

BENCHMARK(plan_double_48)->Unit(benchmark::kMicrosecond);
BENCHMARK(plan_float_18)->Unit(benchmark::kMicrosecond);
BENCHMARK(plan_with_table)->Unit(benchmark::kMicrosecond);
BENCHMARK(structure_solve)->Unit(benchmark::kMicrosecond);
BENCHMARK(base_response_eval);
BENCHMARK(rk4_run)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
