#include "ustlab/verify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "ustlab/distribution.hpp"
#include "ustlab/exact_count.hpp"
#include "ustlab/montecarlo.hpp"
#include "ustlab/sampler.hpp"

namespace ustlab {

namespace {

// chi-square 0.999 quantiles for the degrees of freedom used below
constexpr double kChi2Crit15 = 37.6973;  // K_4: 16 trees

double chi_square_stat(std::span<const std::uint64_t> observed, std::span<const double> expected_prob,
                       std::uint64_t trials) {
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expect = expected_prob[i] * static_cast<double>(trials);
        const double diff = static_cast<double>(observed[i]) - expect;
        stat += diff * diff / expect;
    }
    return stat;
}

CheckResult check_moon(const VerifyOptions& opt) {
    const int n = std::clamp(opt.moon_n, 2, 6);
    const Graph g = Graph::complete(n);
    const auto trees = enumerate_spanning_trees(g);
    std::vector<std::uint64_t> masks;
    masks.reserve(trees.size());
    for (const auto& t : trees) {
        std::uint64_t m = 0;
        for (const Edge& e : t) m |= std::uint64_t{1} << g.index_of(e);
        masks.push_back(m);
    }
    std::vector<BigInt> brute(n, BigInt(0));
    for (std::uint64_t a : masks)
        for (std::uint64_t b : masks) brute[std::popcount(a & b)] += 1;

    const auto formula = moon_pair_counts(n);
    BigInt row_sum(0);
    bool ok = true;
    for (int m = 0; m < n; ++m) {
        row_sum += formula[m];
        if (formula[m] != brute[m]) ok = false;
    }
    const BigInt expected_total = big_pow(BigInt(n), static_cast<unsigned long>(2 * (n - 2)));
    if (row_sum != expected_total) ok = false;

    std::ostringstream detail;
    detail << "n=" << n << " counts vs brute force over " << trees.size() * trees.size()
           << " ordered pairs; row sum " << to_string(row_sum) << (ok ? " ok" : " MISMATCH");
    return {"moon", ok, detail.str()};
}

CheckResult check_lemma1(const VerifyOptions& opt) {
    const int top = std::clamp(opt.lemma1_n, 2, 7);
    long checked = 0, failed = 0;
    for (int n = 2; n <= top; ++n) {
        const Graph g = Graph::complete(n);
        for_each_forest(g, [&](std::span<const int> picked, std::span<const int>) {
            std::vector<Edge> edges;
            edges.reserve(picked.size());
            for (int i : picked) edges.push_back(g.edge(i));
            const Forest f(g, std::move(edges));
            const auto sizes = f.component_sizes();
            if (cayley_forest_count(n, sizes) != count_trees_containing(g, f)) ++failed;
            ++checked;
        });
    }
    std::ostringstream detail;
    detail << checked << " forests of K_2..K_" << top << ", " << failed << " mismatches";
    return {"lemma1", failed == 0, detail.str()};
}

std::vector<Edge> random_forest(const Graph& g, Xoshiro256StarStar& rng) {
    const int n = g.vertex_count();
    const int target = static_cast<int>(rng.uniform_below(n));  // size in [0, n-1]
    std::vector<int> order(g.edge_count());
    for (int i = 0; i < g.edge_count(); ++i) order[i] = i;
    for (int i = g.edge_count() - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_below(static_cast<std::uint64_t>(i) + 1)]);

    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<Edge> edges;
    for (int i : order) {
        if (static_cast<int>(edges.size()) == target) break;
        const Edge e = g.edge(i);
        const int ru = find(e.u), rv = find(e.v);
        if (ru == rv) continue;
        parent[ru] = rv;
        edges.push_back(e);
    }
    return edges;
}

CheckResult check_lcy(const VerifyOptions& opt) {
    long checked = 0, failed = 0;

    for (const auto& sizes : {std::vector<int>{2, 2}, std::vector<int>{2, 3}}) {
        const Partition parts(sizes);
        const Graph g = Graph::multipartite(parts);
        for_each_forest(g, [&](std::span<const int> picked, std::span<const int>) {
            std::vector<Edge> edges;
            for (int i : picked) edges.push_back(g.edge(i));
            const Forest f(g, std::move(edges));
            if (lcy_forest_count(parts, f) != count_trees_containing(g, f)) ++failed;
            ++checked;
        });
    }

    const Partition parts({3, 3, 2});
    const Graph g = Graph::multipartite(parts);
    Xoshiro256StarStar rng(opt.seed);
    for (int trial = 0; trial < 200; ++trial) {
        const Forest f(g, random_forest(g, rng));
        if (lcy_forest_count(parts, f) != count_trees_containing(g, f)) ++failed;
        ++checked;
    }

    std::ostringstream detail;
    detail << checked << " forests across K_{2,2}, K_{2,3}, K_{3,3,2}, " << failed << " mismatches";
    return {"lcy", failed == 0, detail.str()};
}

CheckResult check_sampler(const VerifyOptions& opt) {
    // uniformity over the 16 enumerated trees of K_4
    const Graph k4 = Graph::complete(4);
    const auto trees = enumerate_spanning_trees(k4);
    std::map<std::vector<Edge>, std::size_t> index;
    for (std::size_t i = 0; i < trees.size(); ++i) index[trees[i]] = i;
    std::vector<std::uint64_t> observed(trees.size(), 0);
    for (std::uint64_t i = 0; i < opt.sampler_trials; ++i) {
        const SpanningTree t = wilson_sample(k4, {derive_seed(opt.seed, i)});
        std::vector<Edge> edges(t.edges().begin(), t.edges().end());
        ++observed[index.at(edges)];
    }
    const std::vector<double> uniform(trees.size(), 1.0 / static_cast<double>(trees.size()));
    const double stat = chi_square_stat(observed, uniform, opt.sampler_trials);
    const bool uniform_ok = stat <= kChi2Crit15;

    // empirical law vs the exact law on K_6
    const Graph k6 = Graph::complete(6);
    const SampleReport report =
        simulate_common_edges(k6, opt.sampler_trials, {derive_seed(opt.seed, 1'000'003)}, 0, "K_6");
    const double tv = tv_distance(report.empirical, exact_pmf_complete(6));
    const bool tv_ok = tv < 0.02;

    std::ostringstream detail;
    detail << "K_4 uniformity chi2=" << stat << " (critical " << kChi2Crit15 << "), K_6 TV=" << tv
           << " (< 0.02) at " << opt.sampler_trials << " trials";
    return {"sampler", uniform_ok && tv_ok, detail.str()};
}

CheckResult check_chen_stein(const VerifyOptions& opt) {
    const int n = std::max(opt.chen_stein_n, 2);
    const Pmf law = exact_pmf_complete(n);
    const auto bound = chen_stein_bound(n);
    const double tv2 = tv_distance(law, poisson_pmf(2.0));
    const double tv_shift = tv_distance(law, poisson_pmf(2.0 - 2.0 / n));
    const bool ok = tv2 <= bound.poisson2 && tv_shift <= bound.shifted;

    std::ostringstream detail;
    detail << "n=" << n << ": TV(law, Poi(2))=" << tv2 << " <= " << bound.poisson2
           << "; TV(law, Poi(2-2/n))=" << tv_shift << " <= " << bound.shifted;
    return {"chen-stein", ok, detail.str()};
}

}  // namespace

std::vector<std::string> verify_check_names() {
    return {"moon", "lemma1", "lcy", "sampler", "chen-stein"};
}

std::vector<CheckResult> run_verification(const std::vector<std::string>& checks,
                                          const VerifyOptions& options) {
    std::vector<std::string> selected = checks.empty() ? verify_check_names() : checks;
    std::vector<CheckResult> results;
    for (const std::string& name : selected) {
        if (name == "moon")
            results.push_back(check_moon(options));
        else if (name == "lemma1")
            results.push_back(check_lemma1(options));
        else if (name == "lcy")
            results.push_back(check_lcy(options));
        else if (name == "sampler")
            results.push_back(check_sampler(options));
        else if (name == "chen-stein")
            results.push_back(check_chen_stein(options));
        else
            throw std::invalid_argument("unknown verification check: " + name);
    }
    return results;
}

}  // namespace ustlab
