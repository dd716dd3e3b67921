#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ucf/checker.hpp"
#include "ucf/simulator.hpp"

using namespace ucf;

namespace {

std::vector<Point2> scatter(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::vector<Point2> pts(count);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    return pts;
}

void BM_SmallestEnclosingCircle(benchmark::State& state) {
    const auto pts = scatter(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(smallest_enclosing_circle(pts));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmallestEnclosingCircle)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oN);

void BM_SecBruteForce(benchmark::State& state) {
    const auto pts = scatter(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(sec_bruteforce_oracle(pts));
}
BENCHMARK(BM_SecBruteForce)->DenseRange(3, 12, 3);

// One robot's look-compute on a fresh random world, either phase.
void BM_Compute(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const bool tight = state.range(1) != 0;
    const WorldState w = random_initial(n, tight ? 6.0 : 3.0, 5, tight ? 4.2 * std::sqrt(double(n)) : 6.0 * n);
    const LocalFrame frame{1, w.centers[0]};
    const Snapshot snap = take_snapshot(w.centers, 0, frame, w.spec);
    for (auto _ : state) {
        SeededTieBreaker ties(3);
        benchmark::DoNotOptimize(compute(snap, ties));
    }
    state.SetLabel(smallest_enclosing_circle(w.centers).radius < w.spec.r ? "expansion" : "formation");
}
BENCHMARK(BM_Compute)->ArgsProduct({{3, 6, 10, 16}, {0, 1}});

void BM_Run(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto kind = static_cast<PolicyKind>(state.range(1));
    std::size_t rounds = 0;
    for (auto _ : state) {
        const WorldState w = random_initial(n, 3.5, 11, 2.5 + 2.5 * n);
        const Trace t = run(w, ActivationPolicy{kind, 11, {}}, RunOptions{std::nullopt, 11, 1000});
        rounds = t.records.back().round;
        benchmark::DoNotOptimize(t);
    }
    state.counters["rounds"] = static_cast<double>(rounds);
}
BENCHMARK(BM_Run)
    ->ArgsProduct({{3, 6, 10}, {static_cast<long>(PolicyKind::All), static_cast<long>(PolicyKind::RandomSubset)}})
    ->Unit(benchmark::kMillisecond);

void BM_CheckTrace(benchmark::State& state) {
    const WorldState w = random_initial(8, 3.5, 4, 22.0);
    const Trace t = run(w, ActivationPolicy{PolicyKind::RandomSubset, 4, {}}, RunOptions{std::nullopt, 4, 1000});
    for (auto _ : state) benchmark::DoNotOptimize(check_trace(t, TraceCheckOptions{static_cast<int>(state.range(0)), 0, 1e-6}));
    state.counters["rounds"] = static_cast<double>(t.records.size() - 1);
}
BENCHMARK(BM_CheckTrace)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
