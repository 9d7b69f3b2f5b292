#include "ustlab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ustlab {

Edge::Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw std::invalid_argument("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
}

Partition::Partition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.size() < 2) throw std::invalid_argument("partition needs at least 2 parts");
    offsets_.reserve(sizes_.size() + 1);
    offsets_.push_back(0);
    for (int s : sizes_) {
        if (s < 1) throw std::invalid_argument("partition part sizes must be positive");
        offsets_.push_back(offsets_.back() + s);
    }
}

int Partition::part_of(int v) const {
    if (v < 0 || v >= vertex_count()) throw std::out_of_range("vertex outside partition");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
    return static_cast<int>(it - offsets_.begin()) - 1;
}

Graph::Graph(int n, std::vector<Edge> edges, std::vector<std::int64_t> multiplicity)
    : n_(n), edges_(std::move(edges)), mult_(std::move(multiplicity)) {
    if (n_ < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (mult_.empty()) {
        mult_.assign(edges_.size(), 1);
    } else if (mult_.size() != edges_.size()) {
        throw std::invalid_argument("multiplicity list does not match edge list");
    }

    // canonical order, multiplicities kept aligned
    std::vector<std::size_t> order(edges_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return edges_[a] < edges_[b]; });
    std::vector<Edge> se(edges_.size());
    std::vector<std::int64_t> sm(edges_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        se[i] = edges_[order[i]];
        sm[i] = mult_[order[i]];
    }
    edges_ = std::move(se);
    mult_ = std::move(sm);

    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u < 0 || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loop in edge list");
        if (i > 0 && edges_[i - 1] == e)
            throw std::invalid_argument("duplicate edge pair; use multiplicity for parallel edges");
        if (mult_[i] < 1) throw std::invalid_argument("edge multiplicity must be positive");
    }

    adj_.assign(n_, {});
    wdeg_.assign(n_, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        adj_[e.u].push_back({e.v, mult_[i]});
        adj_[e.v].push_back({e.u, mult_[i]});
        wdeg_[e.u] += mult_[i];
        wdeg_[e.v] += mult_[i];
        total_mult_ += mult_[i];
        if (mult_[i] > 1) simple_ = false;
    }
}

int Graph::index_of(Edge e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || !(*it == e)) return -1;
    return static_cast<int>(it - edges_.begin());
}

Graph Graph::complete(int n) {
    if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph Graph::multipartite(const Partition& parts) {
    const int n = parts.vertex_count();
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (parts.part_of(u) != parts.part_of(v)) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph Graph::path(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, std::move(edges));
}

Graph Graph::cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph(n, std::move(edges));
}

Graph Graph::double_clique(int n, int bridges) {
    if (n < 2) throw std::invalid_argument("double clique needs n >= 2");
    const int a = (n + 1) / 2;
    const int b = n - a;
    if (bridges < 1 || bridges > std::min(a, b))
        throw std::invalid_argument("bridge count must be in [1, min clique size]");
    std::vector<Edge> edges;
    for (int u = 0; u < a; ++u)
        for (int v = u + 1; v < a; ++v) edges.emplace_back(u, v);
    for (int u = a; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    for (int i = 0; i < bridges; ++i) edges.emplace_back(i, a + i);
    return Graph(n, std::move(edges));
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    std::vector<int> size;

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

}  // namespace

Forest::Forest(const Graph& host, std::vector<Edge> edges) : host_(&host), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    UnionFind uf(host.vertex_count());
    for (const Edge& e : edges_) {
        if (!host.has_edge(e))
            throw std::invalid_argument("forest edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ") is not a host edge");
        if (!uf.merge(e.u, e.v)) throw std::invalid_argument("forest edges contain a cycle");
    }
    // components ordered by smallest vertex
    component_of_.assign(host.vertex_count(), -1);
    for (int v = 0; v < host.vertex_count(); ++v) {
        int r = uf.find(v);
        if (component_of_[r] < 0) {
            component_of_[r] = static_cast<int>(components_.size());
            components_.emplace_back();
        }
        component_of_[v] = component_of_[r];
        components_[component_of_[v]].push_back(v);
    }
}

std::vector<int> Forest::component_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(components_.size());
    for (const auto& c : components_) sizes.push_back(static_cast<int>(c.size()));
    return sizes;
}

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (const auto& nb : g.neighbors(u)) {
            if (!seen[nb.vertex]) {
                seen[nb.vertex] = 1;
                ++count;
                stack.push_back(nb.vertex);
            }
        }
    }
    return count == n;
}

std::vector<Edge> bridges(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<Edge> out;
    int timer = 0;

    // iterative lowpoint DFS; parent tracked per vertex, parallel edges kill bridgeness
    struct Frame {
        int v;
        int parent;
        std::size_t next = 0;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<Frame> stack{{root, -1}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto nbs = g.neighbors(f.v);
            if (f.next < nbs.size()) {
                const auto& nb = nbs[f.next++];
                if (disc[nb.vertex] < 0) {
                    disc[nb.vertex] = low[nb.vertex] = timer++;
                    stack.push_back({nb.vertex, f.v});
                } else if (nb.vertex != f.parent) {
                    low[f.v] = std::min(low[f.v], disc[nb.vertex]);
                } else if (nb.weight > 1) {
                    // parallel edge back to the parent is a cycle of length two
                    low[f.v] = std::min(low[f.v], disc[nb.vertex]);
                }
            } else {
                int v = f.v, p = f.parent;
                stack.pop_back();
                if (p >= 0) {
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) out.emplace_back(p, v);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Graph contract_forest(const Graph& g, const Forest& f) {
    if (&f.host() != &g)
        throw std::invalid_argument("forest belongs to a different host graph");
    const int k = f.component_count();
    std::map<Edge, std::int64_t> merged;
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge e = g.edge(i);
        const int cu = f.component_of(e.u);
        const int cv = f.component_of(e.v);
        if (cu == cv) continue;  // becomes a self-loop, dropped
        merged[Edge(cu, cv)] += g.multiplicity(i);
    }
    std::vector<Edge> edges;
    std::vector<std::int64_t> mult;
    edges.reserve(merged.size());
    mult.reserve(merged.size());
    for (const auto& [e, m] : merged) {
        edges.push_back(e);
        mult.push_back(m);
    }
    return Graph(k, std::move(edges), std::move(mult));
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_payload = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string payload;
    if (!next_payload(payload)) throw std::invalid_argument("edge list: empty input");
    std::istringstream header(payload);
    long long n = 0, m = 0;
    if (!(header >> n >> m) || n < 1 || m < 0)
        throw std::invalid_argument("edge list: bad header at line " + std::to_string(lineno));

    std::map<Edge, std::int64_t> acc;
    long long read = 0;
    while (read < m) {
        if (!next_payload(payload))
            throw std::invalid_argument("edge list: expected " + std::to_string(m) + " edges, got " +
                                        std::to_string(read));
        std::istringstream row(payload);
        long long u, v;
        while (row >> u >> v) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("edge list: endpoint out of range at line " +
                                            std::to_string(lineno));
            if (u == v)
                throw std::invalid_argument("edge list: self-loop at line " + std::to_string(lineno));
            acc[Edge(static_cast<int>(u), static_cast<int>(v))] += 1;
            ++read;
        }
    }

    std::vector<Edge> edges;
    std::vector<std::int64_t> mult;
    for (const auto& [e, c] : acc) {
        edges.push_back(e);
        mult.push_back(c);
    }
    return Graph(static_cast<int>(n), std::move(edges), std::move(mult));
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open edge list file: " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.total_multiplicity() << '\n';
    for (int i = 0; i < g.edge_count(); ++i)
        for (std::int64_t c = 0; c < g.multiplicity(i); ++c)
            out << g.edge(i).u << ' ' << g.edge(i).v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    write_edge_list(out, g);
}

}  // namespace ustlab
