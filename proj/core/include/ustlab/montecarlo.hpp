#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ustlab/distribution.hpp"
#include "ustlab/graph.hpp"
#include "ustlab/rng.hpp"

namespace ustlab {

// Result of a seeded experiment. Everything except elapsed_seconds is a pure
// function of (configuration, seed), independent of the worker count.
struct SampleReport {
    std::string graph;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Pmf empirical;  // counts / trials
    double mean = 0.0;
    double variance = 0.0;
    double elapsed_seconds = 0.0;
    std::map<std::string, double> extra;
};

struct GnpSpec {
    int n = 0;
    double p = 0.0;  // in (0, 1]
};

// Empirical law of the common-edge count of two independent uniform spanning
// trees, via Wilson samples with derived seeds (2 per trial). When the graph
// has bridges, extra["bridge_min_frequency"] reports the smallest per-bridge
// intersection frequency (it must be 1).
SampleReport simulate_common_edges(const Graph& g, std::uint64_t trials, RngSeed seed,
                                   int workers = 1, std::string_view label = {});

// Each trial draws a fresh G(n,p); disconnected draws record X = 0 and are
// tallied into extra["disconnected_fraction"].
SampleReport simulate_gnp(const GnpSpec& spec, std::uint64_t trials, RngSeed seed, int workers = 1);

// Size of the intersection of k independent uniform spanning trees of K_n
// (k seeds per trial). extra carries nonempty_fraction and, when observed,
// single_edge_fraction (conditional on a nonempty intersection).
SampleReport simulate_k_trees(int n, int k, std::uint64_t trials, RngSeed seed, int workers = 1);

// One G(n,p) draw; exposed so experiments are reproducible piecewise.
Graph sample_gnp(const GnpSpec& spec, RngSeed seed);

// Named experiment configurations covering the regimes worth demonstrating:
// deterministic trees, thin bipartite (binomial law), bridged double clique,
// complete, balanced multipartite, and G(n,p).
struct ScenarioPreset {
    std::string name;
    std::string description;
    std::string family;       // path | complete | multipartite | double-clique | gnp
    std::vector<int> params;  // family-specific sizes
    double p = 0.0;           // gnp only
    std::uint64_t default_trials = 0;
};

std::vector<ScenarioPreset> scenario_presets();
const ScenarioPreset* find_preset(std::string_view name);
// Fixed-graph presets only; gnp presets resample per trial and go through
// simulate_gnp instead.
Graph build_preset_graph(const ScenarioPreset& preset);

std::string report_to_json(const SampleReport& report);
std::string report_to_csv(const SampleReport& report);  // empirical pmf table

}  // namespace ustlab
