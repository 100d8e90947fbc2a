#include <benchmark/benchmark.h>

#include "condorcet/generators.hpp"
#include "condorcet/popularity.hpp"
#include "condorcet/solvers.hpp"

namespace {

using namespace condorcet;

void BM_SolvePartialSqrt(benchmark::State& state) {
    auto instance = gen_random(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                               0.6, PrefModel::Partial, "none", 7);
    for (auto _ : state) {
        auto result = solve_partial_sqrt(instance);
        benchmark::DoNotOptimize(result.first.members.size());
    }
}
BENCHMARK(BM_SolvePartialSqrt)->Arg(10)->Arg(20)->Arg(40);

void BM_VerifyPopular(benchmark::State& state) {
    auto instance = gen_random(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                               0.6, PrefModel::Partial, "none", 11);
    auto set = solve_partial_sqrt(instance).first;
    for (auto _ : state) {
        auto result = verify_popular(instance, set);
        benchmark::DoNotOptimize(result.popular);
    }
}
BENCHMARK(BM_VerifyPopular)->Arg(10)->Arg(20)->Arg(40);

void BM_SolveWeakMatroid(benchmark::State& state) {
    auto instance = gen_random(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                               0.8, PrefModel::Weak, "partition", 3);
    for (auto _ : state) {
        auto result = solve_weak_matroid(instance);
        benchmark::DoNotOptimize(result.members.size());
    }
}
BENCHMARK(BM_SolveWeakMatroid)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
