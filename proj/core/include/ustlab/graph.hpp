#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ustlab {

// Undirected edge stored canonically as (min, max).
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b);  // normalizes order, rejects self-loops

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Vertex partition n_1,...,n_d with d >= 2. Parts map to the contiguous index
// ranges [offset(i), offset(i+1)) so partitioned graphs keep dense labels.
class Partition {
public:
    explicit Partition(std::vector<int> sizes);

    int part_count() const { return static_cast<int>(sizes_.size()); }
    int vertex_count() const { return offsets_.back(); }
    int size(int i) const { return sizes_[i]; }
    std::span<const int> sizes() const { return sizes_; }
    int offset(int i) const { return offsets_[i]; }
    int part_of(int v) const;

private:
    std::vector<int> sizes_;
    std::vector<int> offsets_;
};

// Simple undirected labelled graph on vertices 0..n-1. Parallel edges are
// carried by a multiplicity per canonical pair (contraction creates them);
// the edge list itself never contains duplicates. Immutable once built, so
// instances are safe to share across threads.
class Graph {
public:
    struct Neighbor {
        int vertex;
        std::int64_t weight;  // multiplicity of the connecting edge
    };

    Graph(int n, std::vector<Edge> edges, std::vector<std::int64_t> multiplicity = {});

    static Graph complete(int n);
    static Graph multipartite(const Partition& parts);
    static Graph path(int n);
    static Graph cycle(int n);
    // Two cliques of sizes ceil(n/2), floor(n/2) joined by `bridges` disjoint edges.
    static Graph double_clique(int n, int bridges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    std::span<const Edge> edges() const { return edges_; }
    Edge edge(int index) const { return edges_[index]; }
    std::int64_t multiplicity(int index) const { return mult_[index]; }
    std::int64_t total_multiplicity() const { return total_mult_; }
    bool is_simple() const { return simple_; }

    int index_of(Edge e) const;  // -1 if absent
    bool has_edge(Edge e) const { return index_of(e) >= 0; }

    std::span<const Neighbor> neighbors(int v) const { return adj_[v]; }
    std::int64_t weighted_degree(int v) const { return wdeg_[v]; }

private:
    int n_;
    std::vector<Edge> edges_;  // sorted
    std::vector<std::int64_t> mult_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<std::int64_t> wdeg_;
    std::int64_t total_mult_ = 0;
    bool simple_ = true;
};

// Acyclic edge subset of a host graph together with the connected-component
// partition it induces on the host's vertices. Components are listed in
// order of their smallest vertex.
class Forest {
public:
    Forest(const Graph& host, std::vector<Edge> edges);
    static Forest empty(const Graph& host) { return Forest(host, {}); }

    const Graph& host() const { return *host_; }
    std::span<const Edge> edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int component_count() const { return static_cast<int>(components_.size()); }
    const std::vector<std::vector<int>>& components() const { return components_; }
    std::vector<int> component_sizes() const;
    int component_of(int v) const { return component_of_[v]; }

private:
    const Graph* host_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> components_;
    std::vector<int> component_of_;
};

bool is_connected(const Graph& g);

// Edges whose removal disconnects the graph; an edge with multiplicity >= 2
// is never a bridge.
std::vector<Edge> bridges(const Graph& g);

// Quotient by the components of f: one vertex per component (ordered by
// smallest original vertex), multiplicities summed, self-loops dropped.
// Spanning trees of the result biject with spanning trees of g containing f.
Graph contract_forest(const Graph& g, const Forest& f);

// Edge-list text format: header "n <count>", then one "u v" line per edge
// (repeated for parallel edges); '#' comments and blank lines are ignored.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace ustlab
