#include <benchmark/benchmark.h>

#include "mdpin/linalg.hpp"
#include "mdpin/pipeline.hpp"

using namespace mdpin;

namespace {

const SystemSpec& system_spec() {
    static const SystemSpec sys = build_system();
    return sys;
}

struct Order4Artifacts {
    std::vector<ProlongedEquation> eqs;
    JetPoint pt;
    SparseRatMatrix matrix;
};

const Order4Artifacts& order4() {
    static const Order4Artifacts a = [] {
        const auto eqs = enumerate_used_system(system_spec(), 4);
        auto pt = saturate_solve(eqs, draw_initial_data({1}, 4));
        auto m = build_linearization(eqs, pt, ColumnPolicy::Occurring, 4);
        return Order4Artifacts{eqs, std::move(pt), std::move(m)};
    }();
    return a;
}

}  // namespace

static void BM_PolynomialMultiply(benchmark::State& state) {
    const auto& d3 = system_spec().equations[0].poly;
    const auto& m0 = system_spec().equations[8].poly;
    for (auto _ : state) benchmark::DoNotOptimize(d3 * m0);
}
BENCHMARK(BM_PolynomialMultiply);

static void BM_TotalDerivative(benchmark::State& state) {
    const auto p = prolong(system_spec().equations[0], 0,
                           MultiIndex{{1, 1, 0, 0}})
                       .poly;
    for (auto _ : state) benchmark::DoNotOptimize(p.total_derivative(0));
}
BENCHMARK(BM_TotalDerivative);

static void BM_EnumerateUsedSystem(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_used_system(system_spec(), order));
}
BENCHMARK(BM_EnumerateUsedSystem)->Arg(3)->Arg(4)->Arg(5);

static void BM_DrawInitialData(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(draw_initial_data({1}, 5));
}
BENCHMARK(BM_DrawInitialData);

static void BM_SaturateSolveOrder3(benchmark::State& state) {
    const auto eqs = enumerate_used_system(system_spec(), 3);
    const auto data = draw_initial_data({1}, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(saturate_solve(eqs, data));
}
BENCHMARK(BM_SaturateSolveOrder3);

static void BM_BuildLinearizationOrder4(benchmark::State& state) {
    const auto& a = order4();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            build_linearization(a.eqs, a.pt, ColumnPolicy::Occurring, 4));
}
BENCHMARK(BM_BuildLinearizationOrder4);

static void BM_RankModularOrder4(benchmark::State& state) {
    const auto& a = order4();
    const auto prime = rank_primes(1, 1)[0];
    for (auto _ : state)
        benchmark::DoNotOptimize(rank_modular_prime(a.matrix, prime));
}
BENCHMARK(BM_RankModularOrder4);

static void BM_RankExactOrder4(benchmark::State& state) {
    const auto& a = order4();
    for (auto _ : state) benchmark::DoNotOptimize(rank_exact(a.matrix));
}
BENCHMARK(BM_RankExactOrder4);

BENCHMARK_MAIN();
