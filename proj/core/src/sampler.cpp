#include "ustlab/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ustlab {

namespace {

struct UnionFind {
    std::vector<int> parent, size;

    explicit UnionFind(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }
};

// Walk-step sampler: neighbors proportional to edge multiplicity so that
// contraction-built multigraphs keep exact uniformity.
class WalkStep {
public:
    explicit WalkStep(const Graph& g) : g_(g), weighted_(!g.is_simple()) {
        if (weighted_) {
            cumulative_.resize(g.vertex_count());
            for (int v = 0; v < g.vertex_count(); ++v) {
                std::int64_t acc = 0;
                for (const auto& nb : g.neighbors(v)) {
                    acc += nb.weight;
                    cumulative_[v].push_back(acc);
                }
            }
        }
    }

    int operator()(int v, Xoshiro256StarStar& rng) const {
        const auto nbs = g_.neighbors(v);
        if (nbs.empty()) throw std::invalid_argument("random walk stuck on an isolated vertex");
        if (!weighted_) return nbs[rng.uniform_below(nbs.size())].vertex;
        const auto& cum = cumulative_[v];
        const std::int64_t pick =
            static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(cum.back())));
        const auto it = std::upper_bound(cum.begin(), cum.end(), pick);
        return nbs[it - cum.begin()].vertex;
    }

private:
    const Graph& g_;
    bool weighted_;
    std::vector<std::vector<std::int64_t>> cumulative_;
};

}  // namespace

SpanningTree::SpanningTree(const Graph& host, std::vector<Edge> edges)
    : host_(&host), edges_(std::move(edges)) {
    const int n = host.vertex_count();
    if (static_cast<int>(edges_.size()) != n - 1)
        throw std::invalid_argument("spanning tree needs exactly n-1 edges");
    std::sort(edges_.begin(), edges_.end());
    UnionFind uf(n);
    for (const Edge& e : edges_) {
        if (!host.has_edge(e)) throw std::invalid_argument("tree edge not in host graph");
        if (!uf.merge(e.u, e.v)) throw std::invalid_argument("tree edges contain a cycle");
    }
    // n-1 acyclic edges necessarily connect all n vertices
}

bool SpanningTree::contains(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

SpanningTree wilson_sample(const Graph& g, RngSeed seed) {
    if (!is_connected(g)) throw std::invalid_argument("cannot sample a spanning tree of a disconnected graph");
    const int n = g.vertex_count();
    if (n == 1) return SpanningTree(g, {});

    Xoshiro256StarStar rng(seed);
    const WalkStep step(g);

    std::vector<char> in_tree(n, 0);
    std::vector<int> successor(n, -1);
    in_tree[0] = 1;  // fixed root: the tree law is root-independent

    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int v = 1; v < n; ++v) {
        if (in_tree[v]) continue;
        // loop-erased walk from v until the tree is hit; the successor map
        // keeps only the erased-loop-free path
        int u = v;
        while (!in_tree[u]) {
            successor[u] = step(u, rng);
            u = successor[u];
        }
        u = v;
        while (!in_tree[u]) {
            in_tree[u] = 1;
            edges.emplace_back(u, successor[u]);
            u = successor[u];
        }
    }
    return SpanningTree(g, std::move(edges));
}

SpanningTree aldous_broder_sample(const Graph& g, RngSeed seed) {
    if (!is_connected(g)) throw std::invalid_argument("cannot sample a spanning tree of a disconnected graph");
    const int n = g.vertex_count();
    if (n == 1) return SpanningTree(g, {});

    Xoshiro256StarStar rng(seed);
    const WalkStep step(g);

    std::vector<char> visited(n, 0);
    int current = 0;
    visited[0] = 1;
    int remaining = n - 1;
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    while (remaining > 0) {
        const int next = step(current, rng);
        if (!visited[next]) {
            visited[next] = 1;
            edges.emplace_back(current, next);
            --remaining;
        }
        current = next;
    }
    return SpanningTree(g, std::move(edges));
}

int common_edges(const SpanningTree& t1, const SpanningTree& t2) {
    const Graph& h1 = t1.host();
    const Graph& h2 = t2.host();
    if (&h1 != &h2) {
        const bool same = h1.vertex_count() == h2.vertex_count() &&
                          std::ranges::equal(h1.edges(), h2.edges());
        if (!same) throw std::invalid_argument("trees live on different host graphs");
    }
    int count = 0;
    auto a = t1.edges().begin();
    auto b = t2.edges().begin();
    while (a != t1.edges().end() && b != t2.edges().end()) {
        if (*a < *b)
            ++a;
        else if (*b < *a)
            ++b;
        else {
            ++count;
            ++a;
            ++b;
        }
    }
    return count;
}

}  // namespace ustlab
