#include <cmath>
#include <map>

#include "doctest.h"
#include "ustlab/exact_count.hpp"
#include "ustlab/sampler.hpp"

using namespace ustlab;

namespace {

double chi_square_uniform(const std::map<std::vector<Edge>, std::uint64_t>& observed,
                          std::size_t cells, std::uint64_t trials) {
    const double expect = static_cast<double>(trials) / static_cast<double>(cells);
    double stat = 0.0;
    std::uint64_t seen = 0;
    for (const auto& [_, count] : observed) {
        const double diff = static_cast<double>(count) - expect;
        stat += diff * diff / expect;
        seen += count;
    }
    // cells that never appeared still contribute their expectation
    stat += static_cast<double>(cells - observed.size()) * expect;
    REQUIRE(seen == trials);
    return stat;
}

constexpr double kChi2Crit15 = 37.6973;  // 0.999 quantile, df = 15

}  // namespace

TEST_SUITE_BEGIN("sampler");

TEST_CASE("a tree is its own unique sample") {
    const Graph t = Graph::path(7);
    for (std::uint64_t seed : {0ull, 1ull, 99999ull}) {
        const SpanningTree w = wilson_sample(t, {seed});
        const SpanningTree a = aldous_broder_sample(t, {seed});
        CHECK(std::ranges::equal(w.edges(), t.edges()));
        CHECK(std::ranges::equal(a.edges(), t.edges()));
    }
}

TEST_CASE("sampling is deterministic in the seed") {
    const Graph g = Graph::complete(12);
    const SpanningTree a = wilson_sample(g, {42});
    const SpanningTree b = wilson_sample(g, {42});
    CHECK(std::ranges::equal(a.edges(), b.edges()));
    const SpanningTree c = wilson_sample(g, {43});
    CHECK_FALSE(std::ranges::equal(a.edges(), c.edges()));
}

TEST_CASE("disconnected graphs are rejected") {
    const Graph g(4, {Edge(0, 1), Edge(2, 3)});
    CHECK_THROWS_AS(wilson_sample(g, {1}), std::invalid_argument);
    CHECK_THROWS_AS(aldous_broder_sample(g, {1}), std::invalid_argument);
}

TEST_CASE("the single-vertex graph has the empty tree") {
    const Graph g = Graph::complete(1);
    CHECK(wilson_sample(g, {0}).edges().empty());
    CHECK(aldous_broder_sample(g, {0}).edges().empty());
}

TEST_CASE("wilson is uniform over the sixteen trees of K_4") {
    const Graph g = Graph::complete(4);
    const std::uint64_t trials = 20000;
    std::map<std::vector<Edge>, std::uint64_t> histogram;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const SpanningTree t = wilson_sample(g, {derive_seed(31337, i)});
        histogram[std::vector<Edge>(t.edges().begin(), t.edges().end())]++;
    }
    CHECK(histogram.size() == 16);
    CHECK(chi_square_uniform(histogram, 16, trials) < kChi2Crit15);
}

TEST_CASE("aldous-broder is uniform over the sixteen trees of K_4") {
    const Graph g = Graph::complete(4);
    const std::uint64_t trials = 20000;
    std::map<std::vector<Edge>, std::uint64_t> histogram;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const SpanningTree t = aldous_broder_sample(g, {derive_seed(1234, i)});
        histogram[std::vector<Edge>(t.edges().begin(), t.edges().end())]++;
    }
    CHECK(histogram.size() == 16);
    CHECK(chi_square_uniform(histogram, 16, trials) < kChi2Crit15);
}

TEST_CASE("multigraph walks weight neighbors by multiplicity") {
    // triangle with side {0,1} doubled: tree law {01,02}: 2/5, {01,12}: 2/5, {02,12}: 1/5
    const Graph g(3, {Edge(0, 1), Edge(0, 2), Edge(1, 2)}, {2, 1, 1});
    const std::uint64_t trials = 25000;
    std::map<std::vector<Edge>, std::uint64_t> histogram;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const SpanningTree t = wilson_sample(g, {derive_seed(777, i)});
        histogram[std::vector<Edge>(t.edges().begin(), t.edges().end())]++;
    }
    const auto frequency = [&](std::vector<Edge> key) {
        return static_cast<double>(histogram[key]) / static_cast<double>(trials);
    };
    const double band = 4.0 * std::sqrt(0.4 * 0.6 / static_cast<double>(trials));
    CHECK(std::abs(frequency({Edge(0, 1), Edge(0, 2)}) - 0.4) < band);
    CHECK(std::abs(frequency({Edge(0, 1), Edge(1, 2)}) - 0.4) < band);
    CHECK(std::abs(frequency({Edge(0, 2), Edge(1, 2)}) - 0.2) < band);
}

TEST_CASE("edge frequencies match the exact edge probability") {
    const Graph g = Graph::multipartite(Partition({2, 3}));
    const Edge probe(0, 2);
    const double exact = to_double(edge_probability(g, probe));
    const std::uint64_t trials = 20000;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i)
        if (aldous_broder_sample(g, {derive_seed(5150, i)}).contains(probe)) ++hits;
    const double freq = static_cast<double>(hits) / static_cast<double>(trials);
    CHECK(std::abs(freq - exact) < 4.0 * std::sqrt(exact * (1 - exact) / static_cast<double>(trials)));
}

TEST_CASE("bridges appear in every sample") {
    const Graph g(6, {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(3, 4), Edge(4, 5), Edge(3, 5),
                      Edge(2, 3)});
    const Edge bridge(2, 3);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        CHECK(wilson_sample(g, {derive_seed(9, i)}).contains(bridge));
        CHECK(aldous_broder_sample(g, {derive_seed(10, i)}).contains(bridge));
    }
}

TEST_CASE("common edge counting") {
    const Graph g = Graph::complete(4);
    const SpanningTree a(g, {Edge(0, 1), Edge(1, 2), Edge(2, 3)});
    const SpanningTree b(g, {Edge(0, 2), Edge(0, 3), Edge(1, 3)});
    CHECK(common_edges(a, a) == 3);
    CHECK(common_edges(a, b) == 0);

    const Graph t = Graph::path(5);
    const SpanningTree u = wilson_sample(t, {3});
    const SpanningTree v = wilson_sample(t, {4});
    CHECK(common_edges(u, v) == 4);  // a tree host forces n-1 common edges

    const Graph other = Graph::complete(5);
    const SpanningTree w = wilson_sample(other, {5});
    CHECK_THROWS_AS(common_edges(a, w), std::invalid_argument);
}

TEST_CASE("spanning tree validation") {
    const Graph g = Graph::complete(4);
    CHECK_THROWS_AS(SpanningTree(g, {Edge(0, 1)}), std::invalid_argument);
    CHECK_THROWS_AS(SpanningTree(g, {Edge(0, 1), Edge(1, 2), Edge(0, 2)}), std::invalid_argument);
    const Graph c4 = Graph::cycle(4);
    CHECK_THROWS_AS(SpanningTree(c4, {Edge(0, 1), Edge(1, 2), Edge(0, 2)}), std::invalid_argument);
}

TEST_SUITE_END();
