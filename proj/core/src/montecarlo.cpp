#include "ustlab/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "ustlab/sampler.hpp"

namespace ustlab {

namespace {

struct Tally {
    std::vector<std::uint64_t> hist;
    std::vector<std::uint64_t> counters;

    Tally(std::size_t hist_size, std::size_t counter_slots)
        : hist(hist_size, 0), counters(counter_slots, 0) {}

    void merge(const Tally& other) {
        for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += other.hist[i];
        for (std::size_t i = 0; i < counters.size(); ++i) counters[i] += other.counters[i];
    }
};

// Trials are sharded by index range; every per-trial seed is derived from the
// trial index alone, so the merged tally is independent of the worker count.
Tally run_trials(std::uint64_t trials, int workers, std::size_t hist_size, std::size_t counter_slots,
                 const std::function<void(std::uint64_t, Tally&)>& trial) {
    if (trials == 0) throw std::invalid_argument("need at least one trial");
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp<std::uint64_t>(workers, 1, trials);

    Tally total(hist_size, counter_slots);
    if (workers == 1) {
        for (std::uint64_t i = 0; i < trials; ++i) trial(i, total);
        return total;
    }

    std::vector<Tally> parts(workers, Tally(hist_size, counter_slots));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = trials / workers;
    const std::uint64_t rem = trials % workers;
    std::uint64_t begin = 0;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
        pool.emplace_back([&, w, begin, end] {
            try {
                for (std::uint64_t i = begin; i < end; ++i) trial(i, parts[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    for (const auto& part : parts) total.merge(part);
    return total;
}

SampleReport finish_report(std::string label, std::uint64_t trials, RngSeed seed, const Tally& tally,
                           std::chrono::steady_clock::time_point started) {
    SampleReport report;
    report.graph = std::move(label);
    report.trials = trials;
    report.seed = seed.value;
    report.empirical = Pmf::from_counts(tally.hist, trials);
    report.mean = report.empirical.mean();
    report.variance = report.empirical.variance();
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

std::string default_label(const Graph& g) {
    std::ostringstream out;
    out << "graph(n=" << g.vertex_count() << ",m=" << g.edge_count() << ")";
    return out.str();
}

}  // namespace

SampleReport simulate_common_edges(const Graph& g, std::uint64_t trials, RngSeed seed, int workers,
                                   std::string_view label) {
    if (!is_connected(g)) throw std::invalid_argument("simulation needs a connected graph");
    const auto started = std::chrono::steady_clock::now();
    const auto bridge_edges = bridges(g);

    const auto tally = run_trials(
        trials, workers, g.vertex_count(), bridge_edges.size(),
        [&](std::uint64_t i, Tally& t) {
            const SpanningTree t1 = wilson_sample(g, {derive_seed(seed.value, 2 * i)});
            const SpanningTree t2 = wilson_sample(g, {derive_seed(seed.value, 2 * i + 1)});
            ++t.hist[common_edges(t1, t2)];
            for (std::size_t b = 0; b < bridge_edges.size(); ++b)
                if (t1.contains(bridge_edges[b]) && t2.contains(bridge_edges[b])) ++t.counters[b];
        });

    SampleReport report = finish_report(label.empty() ? default_label(g) : std::string(label), trials,
                                        seed, tally, started);
    if (!bridge_edges.empty()) {
        const std::uint64_t least = *std::min_element(tally.counters.begin(), tally.counters.end());
        report.extra["bridge_min_frequency"] =
            static_cast<double>(least) / static_cast<double>(trials);
    }
    return report;
}

SampleReport simulate_gnp(const GnpSpec& spec, std::uint64_t trials, RngSeed seed, int workers) {
    if (spec.n < 2) throw std::invalid_argument("G(n,p) experiment needs n >= 2");
    if (!(spec.p > 0.0) || spec.p > 1.0) throw std::invalid_argument("edge probability must be in (0,1]");
    const auto started = std::chrono::steady_clock::now();

    const auto tally = run_trials(
        trials, workers, spec.n, 1,
        [&](std::uint64_t i, Tally& t) {
            const Graph g = sample_gnp(spec, {derive_seed(seed.value, 3 * i)});
            if (!is_connected(g)) {  // X declared 0 on disconnected draws
                ++t.hist[0];
                ++t.counters[0];
                return;
            }
            const SpanningTree t1 = wilson_sample(g, {derive_seed(seed.value, 3 * i + 1)});
            const SpanningTree t2 = wilson_sample(g, {derive_seed(seed.value, 3 * i + 2)});
            ++t.hist[common_edges(t1, t2)];
        });

    std::ostringstream label;
    label << "G(" << spec.n << "," << spec.p << ")";
    SampleReport report = finish_report(label.str(), trials, seed, tally, started);
    report.extra["disconnected_fraction"] =
        static_cast<double>(tally.counters[0]) / static_cast<double>(trials);
    return report;
}

SampleReport simulate_k_trees(int n, int k, std::uint64_t trials, RngSeed seed, int workers) {
    if (n < 2) throw std::invalid_argument("k-tree experiment needs n >= 2");
    if (k < 2) throw std::invalid_argument("k-tree experiment needs k >= 2");
    const auto started = std::chrono::steady_clock::now();
    const Graph g = Graph::complete(n);

    const auto tally = run_trials(
        trials, workers, n, 2,
        [&](std::uint64_t i, Tally& t) {
            const SpanningTree first =
                wilson_sample(g, {derive_seed(seed.value, static_cast<std::uint64_t>(k) * i)});
            std::vector<Edge> common(first.edges().begin(), first.edges().end());
            for (int j = 1; j < k && !common.empty(); ++j) {
                const SpanningTree next = wilson_sample(
                    g, {derive_seed(seed.value, static_cast<std::uint64_t>(k) * i + j)});
                std::vector<Edge> kept;
                kept.reserve(common.size());
                std::set_intersection(common.begin(), common.end(), next.edges().begin(),
                                      next.edges().end(), std::back_inserter(kept));
                common = std::move(kept);
            }
            ++t.hist[common.size()];
            if (!common.empty()) ++t.counters[0];
            if (common.size() == 1) ++t.counters[1];
        });

    std::ostringstream label;
    label << "K_" << n << " x" << k;
    SampleReport report = finish_report(label.str(), trials, seed, tally, started);
    report.extra["nonempty_fraction"] =
        static_cast<double>(tally.counters[0]) / static_cast<double>(trials);
    if (tally.counters[0] > 0)
        report.extra["single_edge_fraction"] =
            static_cast<double>(tally.counters[1]) / static_cast<double>(tally.counters[0]);
    return report;
}

Graph sample_gnp(const GnpSpec& spec, RngSeed seed) {
    if (spec.n < 1) throw std::invalid_argument("G(n,p) needs n >= 1");
    if (!(spec.p > 0.0) || spec.p > 1.0) throw std::invalid_argument("edge probability must be in (0,1]");
    Xoshiro256StarStar rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < spec.n; ++u)
        for (int v = u + 1; v < spec.n; ++v)
            if (rng.uniform01() < spec.p) edges.emplace_back(u, v);
    return Graph(spec.n, std::move(edges));
}

std::vector<ScenarioPreset> scenario_presets() {
    return {
        {"tree", "path on 10 vertices: every spanning tree is the host, X = n-1 always", "path",
         {10}, 0.0, 10000},
        {"bipartite-thin", "K_{2,16}: thin bipartite regime, X approximately Bin(16, 1/2)",
         "multipartite", {2, 16}, 0.0, 100000},
        {"double-clique", "two K_8 joined by one bridge: the bridge is in every intersection",
         "double-clique", {16, 1}, 0.0, 100000},
        {"complete", "K_30: Poisson(2) regime", "complete", {30}, 0.0, 100000},
        {"multipartite-balanced", "K_{34,33,33}: Poisson(2d/(d-1)) = Poisson(3) regime",
         "multipartite", {34, 33, 33}, 0.0, 100000},
        {"gnp-dense", "G(100, 0.5): Poisson(2/p) = Poisson(4) regime", "gnp", {100}, 0.5, 50000},
        {"gnp-thin", "G(400, 0.03) near the connectivity threshold; exploratory only, no "
                     "Poisson claim attached", "gnp", {400}, 0.03, 20000},
    };
}

const ScenarioPreset* find_preset(std::string_view name) {
    static const std::vector<ScenarioPreset> presets = scenario_presets();
    for (const auto& p : presets)
        if (p.name == name) return &p;
    return nullptr;
}

Graph build_preset_graph(const ScenarioPreset& preset) {
    if (preset.family == "path") return Graph::path(preset.params.at(0));
    if (preset.family == "complete") return Graph::complete(preset.params.at(0));
    if (preset.family == "multipartite")
        return Graph::multipartite(Partition(std::vector<int>(preset.params.begin(), preset.params.end())));
    if (preset.family == "double-clique")
        return Graph::double_clique(preset.params.at(0), preset.params.at(1));
    if (preset.family == "gnp")
        throw std::logic_error("gnp presets resample per trial; run them through simulate_gnp");
    throw std::logic_error("unknown preset family: " + preset.family);
}

std::string report_to_json(const SampleReport& report) {
    nlohmann::json j;
    j["graph"] = report.graph;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["mean"] = report.mean;
    j["variance"] = report.variance;
    j["elapsed_seconds"] = report.elapsed_seconds;
    j["empirical"] = nlohmann::json::parse(pmf_to_json(report.empirical));
    j["extra"] = report.extra;
    return j.dump(2);
}

std::string report_to_csv(const SampleReport& report) { return pmf_to_csv(report.empirical); }

}  // namespace ustlab
