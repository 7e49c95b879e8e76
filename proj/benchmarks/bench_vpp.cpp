#include <benchmark/benchmark.h>

#include "vpp/assembly.hpp"
#include "vpp/diagnostics.hpp"
#include "vpp/operators.hpp"
#include "vpp/random_fields.hpp"
#include "vpp/scheme.hpp"
#include "vpp/taylor_green.hpp"

using namespace vpp;

namespace {

SchemeParams bench_params(int n) {
    SchemeParams p;
    p.dt = 1.0 / n;
    p.final_time = 1.0;
    return p;
}

void BM_DivergenceGradient(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(n, n);
    Rng rng(1);
    const VelocityField w = random_velocity(g, rng);
    for (auto _ : state) benchmark::DoNotOptimize(gradient(divergence(w)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.num_u() + g.num_v()));
}

void BM_StrainDivergence(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(n, n);
    Rng rng(2);
    const VelocityField w = random_velocity(g, rng);
    for (auto _ : state) benchmark::DoNotOptimize(strain_divergence(w, 0.01));
}

void BM_AssemblePrediction(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(n, n);
    const SchemeParams p = bench_params(n);
    const Obstacle body = Obstacle::disk({0.5, 0.5}, 0.2, {}, 1.0, 1.0);
    const VelocityField v = taylor_green(0.0, g, p.mu).v;
    for (auto _ : state) benchmark::DoNotOptimize(assemble_prediction(g, body, p, v, p.dt));
}

void BM_CorrectionSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(n, n);
    Rng rng(3);
    const VelocityField v_tilde = random_velocity(g, rng);
    const SchemeParams p = bench_params(n);
    int iterations = 0;
    for (auto _ : state) iterations = correct(v_tilde, p).report.iterations;
    state.counters["cg_iterations"] = iterations;
}

void BM_Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(n, n);
    const SchemeParams p = bench_params(n);
    ProblemData data;
    data.obstacle = Obstacle::disk({0.5, 0.5}, 0.2, {}, 1.0, 1.0);
    const FlowState s = initial_state(taylor_green(0.0, g, p.mu).v, ScalarCellField(g));
    for (auto _ : state) benchmark::DoNotOptimize(step(s, data, p));
}

void BM_HMinus1(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g(n, n);
    Rng rng(4);
    const VelocityField w = random_velocity(g, rng);
    for (auto _ : state) benchmark::DoNotOptimize(h_minus1_norm(w));
}

}  // namespace

BENCHMARK(BM_DivergenceGradient)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_StrainDivergence)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_AssemblePrediction)->RangeMultiplier(2)->Range(32, 128);
BENCHMARK(BM_CorrectionSolve)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HMinus1)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
