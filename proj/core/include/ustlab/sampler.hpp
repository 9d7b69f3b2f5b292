#pragma once

#include <span>
#include <vector>

#include "ustlab/graph.hpp"
#include "ustlab/rng.hpp"

namespace ustlab {

// Spanning tree of a host graph; exactly n-1 edges, validated on construction.
class SpanningTree {
public:
    SpanningTree(const Graph& host, std::vector<Edge> edges);

    const Graph& host() const { return *host_; }
    std::span<const Edge> edges() const { return edges_; }
    bool contains(Edge e) const;

private:
    const Graph* host_;
    std::vector<Edge> edges_;  // sorted
};

// Wilson's loop-erased random walk sampler, rooted at vertex 0. Exactly
// uniform over spanning trees, parallel edges weighted by multiplicity.
// Deterministic in the seed; throws on a disconnected graph.
SpanningTree wilson_sample(const Graph& g, RngSeed seed);

// Aldous-Broder first-entry sampler, also exactly uniform. Kept as an
// independent cross-check for Wilson.
SpanningTree aldous_broder_sample(const Graph& g, RngSeed seed);

// |t1.edges intersect t2.edges|; both trees must share a host.
int common_edges(const SpanningTree& t1, const SpanningTree& t2);

}  // namespace ustlab
