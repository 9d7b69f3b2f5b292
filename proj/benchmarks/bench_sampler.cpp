#include <benchmark/benchmark.h>

#include "ustlab/montecarlo.hpp"
#include "ustlab/sampler.hpp"

using namespace ustlab;

static void BM_WilsonComplete(benchmark::State& state) {
    const Graph g = Graph::complete(static_cast<int>(state.range(0)));
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(wilson_sample(g, {derive_seed(1, i++)}));
}
BENCHMARK(BM_WilsonComplete)->Arg(16)->Arg(64)->Arg(256);

static void BM_AldousBroderComplete(benchmark::State& state) {
    const Graph g = Graph::complete(static_cast<int>(state.range(0)));
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(aldous_broder_sample(g, {derive_seed(2, i++)}));
}
BENCHMARK(BM_AldousBroderComplete)->Arg(16)->Arg(64)->Arg(256);

static void BM_WilsonMultipartite(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Graph g = Graph::multipartite(Partition({m, m}));
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(wilson_sample(g, {derive_seed(3, i++)}));
}
BENCHMARK(BM_WilsonMultipartite)->Arg(25)->Arg(50);

static void BM_GnpTrial(benchmark::State& state) {
    const GnpSpec spec{static_cast<int>(state.range(0)), 0.5};
    std::uint64_t i = 0;
    for (auto _ : state) {
        const Graph g = sample_gnp(spec, {derive_seed(4, 3 * i)});
        if (is_connected(g)) {
            const auto t1 = wilson_sample(g, {derive_seed(4, 3 * i + 1)});
            const auto t2 = wilson_sample(g, {derive_seed(4, 3 * i + 2)});
            benchmark::DoNotOptimize(common_edges(t1, t2));
        }
        ++i;
    }
}
BENCHMARK(BM_GnpTrial)->Arg(50)->Arg(100)->Arg(200);

BENCHMARK_MAIN();
