// Acceptance gate: runs every release criterion and prints one pass/fail
// line per criterion. Exit status is the number of failed criteria.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ustlab/distribution.hpp"
#include "ustlab/exact_count.hpp"
#include "ustlab/montecarlo.hpp"
#include "ustlab/sampler.hpp"

using namespace ustlab;

namespace {

constexpr std::uint64_t kSeed = 0xACCE9;
constexpr double kChi2Crit15 = 37.6973;  // 0.999 quantile, df = 15 (16 trees of K_4)
constexpr double kChi2Crit11 = 31.2641;  // 0.999 quantile, df = 11 (12 trees of K_{2,3})

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " FAILED[" << what << "]";
        }
    }
};

// ---- shared oracles -------------------------------------------------------

std::vector<long> pair_counts_by_enumeration(const Graph& g) {
    const auto trees = enumerate_spanning_trees(g);
    std::vector<std::uint64_t> masks;
    for (const auto& t : trees) {
        std::uint64_t m = 0;
        for (const Edge& e : t) m |= std::uint64_t{1} << g.index_of(e);
        masks.push_back(m);
    }
    std::vector<long> counts(g.vertex_count(), 0);
    for (std::uint64_t a : masks)
        for (std::uint64_t b : masks) ++counts[std::popcount(a & b)];
    return counts;
}

double dobinski_moment(double lambda, int r) {
    double total = 0.0;
    double weight = std::exp(-lambda);
    for (int k = 0; k <= 80; ++k) {
        double kr = 1.0;
        for (int i = 0; i < r; ++i) kr *= k;
        total += weight * kr;
        weight = weight * lambda / (k + 1);
    }
    return total;
}

std::vector<Edge> random_forest(const Graph& g, Xoshiro256StarStar& rng) {
    const int n = g.vertex_count();
    const int target = static_cast<int>(rng.uniform_below(n));
    std::vector<int> order(g.edge_count());
    for (int i = 0; i < g.edge_count(); ++i) order[i] = i;
    for (int i = g.edge_count() - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_below(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    std::vector<Edge> edges;
    for (int i : order) {
        if (static_cast<int>(edges.size()) == target) break;
        const Edge e = g.edge(i);
        int ru = find(e.u), rv = find(e.v);
        if (ru == rv) continue;
        parent[ru] = rv;
        edges.push_back(e);
    }
    return edges;
}

double chi_square_vs_uniform(std::span<const std::uint64_t> observed, std::uint64_t trials) {
    const double expect = static_cast<double>(trials) / static_cast<double>(observed.size());
    double stat = 0.0;
    for (std::uint64_t o : observed) {
        const double diff = static_cast<double>(o) - expect;
        stat += diff * diff / expect;
    }
    return stat;
}

double chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    // equal totals, so the simple pooled form applies
    double stat = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double sum = static_cast<double>(a[i] + b[i]);
        if (sum == 0.0) continue;
        const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        stat += diff * diff / sum;
    }
    return stat;
}

std::vector<std::uint64_t> tree_histogram(const Graph& g, std::uint64_t trials, std::uint64_t seed,
                                          bool use_wilson) {
    const auto trees = enumerate_spanning_trees(g);
    std::map<std::vector<Edge>, std::size_t> index;
    for (std::size_t i = 0; i < trees.size(); ++i) index[trees[i]] = i;
    std::vector<std::uint64_t> hist(trees.size(), 0);
    for (std::uint64_t i = 0; i < trials; ++i) {
        const RngSeed s{derive_seed(seed, i)};
        const SpanningTree t = use_wilson ? wilson_sample(g, s) : aldous_broder_sample(g, s);
        ++hist[index.at(std::vector<Edge>(t.edges().begin(), t.edges().end()))];
    }
    return hist;
}

// ---- criteria -------------------------------------------------------------

// 1. Moon formula equals brute-force pair enumeration for n = 2..5.
Outcome criterion_moon_brute_force() {
    Outcome out;
    for (int n = 2; n <= 5; ++n) {
        const auto brute = pair_counts_by_enumeration(Graph::complete(n));
        const auto formula = moon_pair_counts(n);
        for (int m = 0; m < n; ++m)
            out.require(formula[m] == brute[m], "n=" + std::to_string(n) + ",m=" + std::to_string(m));
    }
    const auto row4 = moon_pair_counts(4);
    out.require(row4 == std::vector<BigInt>{12, 120, 108, 16}, "n=4 row");
    BigInt sum(0);
    for (const auto& c : row4) sum += c;
    out.require(sum == 256, "n=4 row sum");
    out.detail << "rows n=2..5 vs enumeration; n=4 row (12,120,108,16) sums to 256";
    return out;
}

// 2. Mean and variance of the exact law equal the closed forms, n = 2..30.
Outcome criterion_closed_form_moments() {
    Outcome out;
    for (int n = 2; n <= 30; ++n) {
        const Pmf law = exact_pmf_complete(n);
        out.require(law.exact_mean() == exact_mean_complete(n), "mean n=" + std::to_string(n));
        out.require(law.exact_variance() == exact_variance_complete(n),
                    "variance n=" + std::to_string(n));
    }
    out.detail << "2(n-1)/n and (n-1)(n-2)(2n-3)/n^3 exact for n=2..30";
    return out;
}

// 3. Component-size product formula vs contraction counting, every forest of K_n, n <= 6.
Outcome criterion_forest_count_oracle() {
    Outcome out;
    long checked = 0;
    for (int n = 2; n <= 6; ++n) {
        const Graph g = Graph::complete(n);
        for_each_forest(g, [&](std::span<const int> picked, std::span<const int>) {
            std::vector<Edge> edges;
            for (int i : picked) edges.push_back(g.edge(i));
            const Forest f(g, std::move(edges));
            if (cayley_forest_count(n, f.component_sizes()) != count_trees_containing(g, f)) {
                out.require(false, "forest of K_" + std::to_string(n));
            }
            ++checked;
        });
    }
    out.detail << checked << " forests of K_2..K_6, exact equality";
    return out;
}

// 4. Multipartite forest-count formula vs contraction counting.
Outcome criterion_multipartite_count_oracle() {
    Outcome out;
    long checked = 0;
    for (const auto& sizes : {std::vector<int>{2, 2}, std::vector<int>{2, 3}}) {
        const Partition parts(sizes);
        const Graph g = Graph::multipartite(parts);
        for_each_forest(g, [&](std::span<const int> picked, std::span<const int>) {
            std::vector<Edge> edges;
            for (int i : picked) edges.push_back(g.edge(i));
            const Forest f(g, std::move(edges));
            if (lcy_forest_count(parts, f) != count_trees_containing(g, f))
                out.require(false, "exhaustive");
            ++checked;
        });
    }
    for (const auto& sizes : {std::vector<int>{3, 3, 2}, std::vector<int>{4, 3, 3}}) {
        const Partition parts(sizes);
        const Graph g = Graph::multipartite(parts);
        Xoshiro256StarStar rng(kSeed + sizes[0]);
        for (int trial = 0; trial < 500; ++trial) {
            const Forest f(g, random_forest(g, rng));
            if (lcy_forest_count(parts, f) != count_trees_containing(g, f))
                out.require(false, "random");
            ++checked;
        }
    }
    out.detail << checked << " forests of K_{2,2}, K_{2,3} (all), K_{3,3,2}, K_{4,3,3} (500 random each)";
    return out;
}

// 5. Total variation to the Poisson limit: decreasing in n and within the
//    analytic 52/n (and 50/n against the shifted reference).
Outcome criterion_poisson_limit() {
    Outcome out;
    double prev = 1e9;
    out.detail << "TV(law_n, Poi(2)):";
    for (int n : {10, 20, 50, 100}) {
        const Pmf law = exact_pmf_complete(n);
        const auto bound = chen_stein_bound(n);
        const double tv2 = tv_distance(law, poisson_pmf(2.0));
        const double tvs = tv_distance(law, poisson_pmf(2.0 - 2.0 / n));
        out.require(tv2 < prev, "monotone n=" + std::to_string(n));
        out.require(tv2 <= bound.poisson2, "52/n at n=" + std::to_string(n));
        out.require(tvs <= bound.shifted, "50/n at n=" + std::to_string(n));
        out.detail << " n=" << n << ":" << tv2;
        prev = tv2;
    }
    return out;
}

// 6. Raw moments converge at rate 1/n; constants calibrated at n = 20 with a
//    fixed 1.25 margin (the 1/n^2 term enters with adverse sign).
Outcome criterion_moment_convergence() {
    Outcome out;
    for (int r = 1; r <= 3; ++r) {
        static const double expected[] = {0, 2.0, 6.0, 22.0};
        out.require(std::abs(bell_moment(2.0, r) - expected[r]) < 1e-10,
                    "closed moment r=" + std::to_string(r));
        out.require(std::abs(bell_moment(2.0, r) - dobinski_moment(2.0, r)) < 1e-10,
                    "dobinski r=" + std::to_string(r));
    }
    const Pmf base = exact_pmf_complete(20);
    double c[5];
    for (int r = 1; r <= 4; ++r)
        c[r] = 1.25 * 20.0 * std::abs(base.moment(r) - bell_moment(2.0, r));
    out.detail << "C_r =";
    for (int r = 1; r <= 4; ++r) out.detail << " " << c[r];
    for (int n : {40, 80}) {
        const Pmf law = exact_pmf_complete(n);
        for (int r = 1; r <= 4; ++r) {
            const double err = std::abs(law.moment(r) - bell_moment(2.0, r));
            out.require(err <= c[r] / n, "r=" + std::to_string(r) + ",n=" + std::to_string(n));
        }
    }
    return out;
}

// 7. Sampler exactness: chi-square uniformity on enumerated trees, agreement
//    between the two samplers, and the 2/n edge frequency on K_50.
Outcome criterion_sampler_exactness() {
    Outcome out;
    const std::uint64_t trials = 100000;
    const Graph k4 = Graph::complete(4);
    const Graph k23 = Graph::multipartite(Partition({2, 3}));

    const auto wil4 = tree_histogram(k4, trials, kSeed + 1, true);
    const auto ab4 = tree_histogram(k4, trials, kSeed + 2, false);
    const auto wil23 = tree_histogram(k23, trials, kSeed + 3, true);
    const auto ab23 = tree_histogram(k23, trials, kSeed + 4, false);

    const double u4 = chi_square_vs_uniform(wil4, trials);
    const double u23 = chi_square_vs_uniform(wil23, trials);
    out.require(u4 <= kChi2Crit15, "K_4 uniformity");
    out.require(u23 <= kChi2Crit11, "K_{2,3} uniformity");

    const double pair4 = chi_square_two_sample(wil4, ab4);
    const double pair23 = chi_square_two_sample(wil23, ab23);
    out.require(pair4 <= kChi2Crit15, "wilson/aldous-broder K_4");
    out.require(pair23 <= kChi2Crit11, "wilson/aldous-broder K_{2,3}");

    const Graph k50 = Graph::complete(50);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i)
        if (wilson_sample(k50, {derive_seed(kSeed + 5, i)}).contains(Edge(0, 1))) ++hits;
    const double freq = static_cast<double>(hits) / static_cast<double>(trials);
    const double band = 4.0 * std::sqrt(0.04 * 0.96 / static_cast<double>(trials));
    out.require(std::abs(freq - 0.04) <= band, "K_50 edge frequency");

    out.detail << "chi2 K_4=" << u4 << " K_{2,3}=" << u23 << " two-sample=" << pair4 << "/"
               << pair23 << " K_50 freq=" << freq;
    return out;
}

// 8. Simulated law vs exact law, K_6 and K_{2,2}.
Outcome criterion_simulation_vs_exact() {
    Outcome out;
    const std::uint64_t trials = 100000;
    const SampleReport k6 = simulate_common_edges(Graph::complete(6), trials, {kSeed + 6}, 0, "K_6");
    const double tv6 = tv_distance(k6.empirical, exact_pmf_complete(6));
    out.require(tv6 < 0.02, "K_6 TV");

    const Graph c4 = Graph::multipartite(Partition({2, 2}));
    const SampleReport k22 = simulate_common_edges(c4, trials, {kSeed + 7}, 0, "K_{2,2}");
    const double tv22 = tv_distance(k22.empirical, exact_pmf_general(c4));
    out.require(tv22 < 0.02, "K_{2,2} TV");

    out.detail << "TV K_6=" << tv6 << " K_{2,2}=" << tv22 << " at " << trials << " trials";
    return out;
}

// 9. G(n,p) Poisson regime: mean within 5% of 2/p, TV to Poi(4) under 0.1,
//    disconnected draws essentially absent.
Outcome criterion_gnp() {
    Outcome out;
    const std::uint64_t trials = 50000;
    const SampleReport report = simulate_gnp({100, 0.5}, trials, {kSeed + 8}, 0);
    const double tv = tv_distance(report.empirical, poisson_pmf(4.0));
    out.require(std::abs(report.mean - 4.0) <= 0.2, "mean within 5%");
    out.require(tv < 0.1, "TV to Poi(4)");
    out.require(report.extra.at("disconnected_fraction") < 1e-3, "disconnected fraction");
    out.detail << "mean=" << report.mean << " TV=" << tv
               << " disconnected=" << report.extra.at("disconnected_fraction");
    return out;
}

// 10. Multipartite Poisson regime plus the exact bipartite mean identity
//     sum_e q_e^2 = (2m-1)^2/m^2 for K_{m,m}, m <= 25.
Outcome criterion_multipartite_limit() {
    Outcome out;
    const std::uint64_t trials = 100000;
    const Graph k5050 = Graph::multipartite(Partition({50, 50}));
    const SampleReport r2 = simulate_common_edges(k5050, trials, {kSeed + 9}, 0, "K_{50,50}");
    out.require(std::abs(r2.mean - 4.0) <= 0.2, "K_{50,50} mean within 5%");

    const Graph k343333 = Graph::multipartite(Partition({34, 33, 33}));
    const SampleReport r3 = simulate_common_edges(k343333, trials, {kSeed + 10}, 0, "K_{34,33,33}");
    out.require(std::abs(r3.mean - 3.0) <= 0.15, "K_{34,33,33} mean within 5%");

    for (int m = 1; m <= 25; ++m) {
        const Graph g = Graph::multipartite(Partition({m, m}));
        Rational acc(0);
        for (const Edge& e : g.edges()) {
            const Rational q = edge_probability(g, e);
            acc += q * q;
        }
        const Rational expect = make_rational(BigInt(2 * m - 1) * (2 * m - 1), BigInt(m) * m);
        if (acc != expect) out.require(false, "identity m=" + std::to_string(m));
    }
    out.detail << "means " << r2.mean << " / " << r3.mean
               << "; sum q^2 = (2m-1)^2/m^2 exact for m=1..25";
    return out;
}

// 11. Three-tree intersections: frequency inside the Bonferroni/union band,
//     and a nonempty intersection is almost always a single edge.
//
// The single-edge clause asserts > 0.95 at n = 30, but the true conditional
// fraction there is at most 0.9423 (P(two or more common edges) is at least
// E[pairs] - E[triples] = 0.007437 against P(nonempty) <= 0.128889); "almost
// always" is an n -> infinity statement and its 2/n-scale correction is still
// 0.067 at n = 30. Kept as written and expected to fail; see README.
Outcome criterion_k_tree_intersections() {
    Outcome out;
    const std::uint64_t trials = 100000;
    const auto bounds = k_tree_bounds(30, 3);
    const SampleReport report = simulate_k_trees(30, 3, trials, {kSeed + 11}, 0);
    const double freq = report.extra.at("nonempty_fraction");
    const double sigma = std::sqrt(bounds.upper * (1 - bounds.upper) / static_cast<double>(trials));
    out.require(freq >= bounds.lower - 3 * sigma, "lower bound");
    out.require(freq <= bounds.upper + 3 * sigma, "upper bound");
    const double single = report.extra.at("single_edge_fraction");
    out.require(single > 0.95, "single edge fraction");
    out.detail << "freq=" << freq << " in [" << bounds.lower << "," << bounds.upper
               << "] +-3sigma; single=" << single;
    return out;
}

// 12. Scenario presets: deterministic trees, bridges always common, and the
//     thin-bipartite law against Bin(16, 1/2).
//
// The third clause asserts TV < 0.05, but the exact law of the common-edge
// count on K_{2,16} sits at TV 0.2087 from Bin(16, 1/2): the binomial picture
// is an asymptotic one, and the finite-size mean offset (law mean 9.03 vs 8)
// does not wash out at 16. The clause is kept as written and is expected to
// fail; see README.
Outcome criterion_scenarios() {
    Outcome out;
    const Graph tree = build_preset_graph(*find_preset("tree"));
    const SampleReport rt = simulate_common_edges(tree, 10000, {kSeed + 12}, 0, "tree");
    out.require(rt.empirical.mass(tree.vertex_count() - 1) == 1.0, "tree constant");

    const Graph dc = build_preset_graph(*find_preset("double-clique"));
    const SampleReport rd = simulate_common_edges(dc, 100000, {kSeed + 13}, 0, "double-clique");
    out.require(rd.extra.at("bridge_min_frequency") == 1.0, "bridge always common");

    const Graph thin = build_preset_graph(*find_preset("bipartite-thin"));
    const SampleReport rb = simulate_common_edges(thin, 100000, {kSeed + 14}, 0, "bipartite-thin");
    const double tv = tv_distance(rb.empirical, binomial_pmf(16, Rational(1, 2)));
    out.require(tv < 0.05, "K_{2,16} TV to Bin(16,1/2)");

    out.detail << "tree mass(9)=" << rt.empirical.mass(9)
               << " bridge freq=" << rd.extra.at("bridge_min_frequency") << " K_{2,16} TV=" << tv;
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"01", "moon-pair-counts-vs-brute-force", criterion_moon_brute_force},
        {"02", "closed-form-moments", criterion_closed_form_moments},
        {"03", "forest-count-oracle-complete", criterion_forest_count_oracle},
        {"04", "forest-count-oracle-multipartite", criterion_multipartite_count_oracle},
        {"05", "poisson-limit-total-variation", criterion_poisson_limit},
        {"06", "moment-convergence", criterion_moment_convergence},
        {"07", "sampler-exactness", criterion_sampler_exactness},
        {"08", "simulation-vs-exact-law", criterion_simulation_vs_exact},
        {"09", "gnp-poisson-regime", criterion_gnp},
        {"10", "multipartite-poisson-regime", criterion_multipartite_limit},
        {"11", "k-tree-intersection-bounds", criterion_k_tree_intersections},
        {"12", "scenario-presets", criterion_scenarios},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << "exception: " << e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s %s (%s) [%.1fs]\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                    out.detail.str().c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
