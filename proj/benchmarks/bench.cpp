#include <benchmark/benchmark.h>

#include "shadow_transport/coupling.hpp"
#include "shadow_transport/piecewise_linear.hpp"
#include "shadow_transport/potentials.hpp"
#include "shadow_transport/shadow.hpp"
#include "shadow_transport/verify.hpp"

using namespace shadow_transport;

namespace {

std::pair<DiscreteMeasure, DiscreteMeasure> instance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    return random_instance(7, n, n, InstanceKind::GeneralCd);
}

}  // namespace

static void BM_Hull(benchmark::State& state) {
    const auto [mu, nu] = instance(state);
    const PiecewiseLinear d = put_potential(nu) - put_potential(mu);
    for (auto _ : state) benchmark::DoNotOptimize(convex_hull(d));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hull)->RangeMultiplier(4)->Range(16, 256)->Complexity();

static void BM_Shadow(benchmark::State& state) {
    const auto [mu, nu] = instance(state);
    const DiscreteMeasure half = mu.scaled(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(shadow(half, nu));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Shadow)->RangeMultiplier(4)->Range(16, 256)->Complexity();

static void BM_PiDecreasing(benchmark::State& state) {
    const auto [mu, nu] = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(pi_decreasing(mu, nu));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PiDecreasing)->RangeMultiplier(2)->Range(8, 256)->Complexity();

static void BM_LpMinCost(benchmark::State& state) {
    const auto [mu, nu] = instance(state);
    const CostFunction cost = spence_mirrlees_cost();
    for (auto _ : state) benchmark::DoNotOptimize(lp_min_cost(mu, nu, cost));
}
BENCHMARK(BM_LpMinCost)->DenseRange(4, 12, 4);
BENCHMARK_MAIN();
