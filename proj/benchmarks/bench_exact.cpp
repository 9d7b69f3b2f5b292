#include <benchmark/benchmark.h>

#include "ustlab/distribution.hpp"
#include "ustlab/exact_count.hpp"

using namespace ustlab;

static void BM_CountSpanningTrees(benchmark::State& state) {
    const Graph g = Graph::complete(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(count_spanning_trees(g));
}
BENCHMARK(BM_CountSpanningTrees)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_MoonPairCounts(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(moon_pair_counts(n));
}
BENCHMARK(BM_MoonPairCounts)->Arg(20)->Arg(50)->Arg(100);

static void BM_ExactPmfGeneral(benchmark::State& state) {
    const Graph g = Graph::complete(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exact_pmf_general(g));
}
BENCHMARK(BM_ExactPmfGeneral)->Arg(5)->Arg(6);

static void BM_EdgeProbability(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Graph g = Graph::multipartite(Partition({m, m}));
    for (auto _ : state) benchmark::DoNotOptimize(edge_probability(g, g.edge(0)));
}
BENCHMARK(BM_EdgeProbability)->Arg(5)->Arg(10)->Arg(20);

static void BM_EnumerateSpanningTrees(benchmark::State& state) {
    const Graph g = Graph::complete(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_spanning_trees(g));
}
BENCHMARK(BM_EnumerateSpanningTrees)->Arg(5)->Arg(6)->Arg(7);

BENCHMARK_MAIN();
