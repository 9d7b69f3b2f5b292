#include "ustlab/exact_count.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <iostream>
#include <numeric>

namespace ustlab {

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return BigInt(1);
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("determinant of a non-square matrix");

    BigInt prev(1);
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r) {
                if (a[r][k] != 0) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) return BigInt(0);
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                // the Bareiss recurrence divides exactly, also after row swaps
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign < 0 ? BigInt(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

namespace {

// Laplacian with row/column 0 removed, multiplicities as weights.
std::vector<std::vector<BigInt>> laplacian_minor(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<BigInt>> m(n - 1, std::vector<BigInt>(n - 1, BigInt(0)));
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge e = g.edge(i);
        const BigInt w(static_cast<long>(g.multiplicity(i)));
        if (e.u > 0) m[e.u - 1][e.u - 1] += w;
        if (e.v > 0) m[e.v - 1][e.v - 1] += w;
        if (e.u > 0 && e.v > 0) {
            m[e.u - 1][e.v - 1] -= w;
            m[e.v - 1][e.u - 1] -= w;
        }
    }
    return m;
}

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

}  // namespace

BigInt count_spanning_trees(const Graph& g) {
    if (g.vertex_count() == 1) return BigInt(1);
    BigInt det = bareiss_determinant(laplacian_minor(g));
    assert(det >= 0);
    return det;
}

BigInt count_trees_containing(const Graph& g, const Forest& f) {
    if (&f.host() != &g) throw std::invalid_argument("forest belongs to a different host graph");
    return count_spanning_trees(contract_forest(g, f));
}

BigInt cayley_forest_count(int n, std::span<const int> component_sizes) {
    if (n < 1) throw std::invalid_argument("vertex count must be positive");
    if (component_sizes.empty()) throw std::invalid_argument("need at least one component");
    long sum = 0;
    BigInt prod(1);
    for (int s : component_sizes) {
        if (s < 1) throw std::invalid_argument("component sizes must be positive");
        sum += s;
        prod *= s;
    }
    if (sum != n) throw std::invalid_argument("component sizes do not sum to the vertex count");

    const int k = static_cast<int>(component_sizes.size());
    if (k >= 2) return prod * big_pow(BigInt(n), static_cast<unsigned long>(k - 2));
    // k = 1: (n_1) n^{-1} handled as an exact rational, which reduces to 1
    Rational r = make_rational(prod, BigInt(n));
    assert(is_integral(r));
    return r.get_num();
}

namespace {

// Brute-force pair counts over all ordered spanning-tree pairs of K_n.
std::vector<BigInt> brute_force_pair_counts(int n) {
    const Graph g = Graph::complete(n);
    const auto trees = enumerate_spanning_trees(g);
    std::vector<std::uint64_t> masks;
    masks.reserve(trees.size());
    for (const auto& t : trees) {
        std::uint64_t m = 0;
        for (const Edge& e : t) m |= std::uint64_t{1} << g.index_of(e);
        masks.push_back(m);
    }
    std::vector<BigInt> counts(n, BigInt(0));
    for (std::uint64_t a : masks)
        for (std::uint64_t b : masks)
            counts[std::popcount(a & b)] += 1;
    return counts;
}

}  // namespace

std::vector<BigInt> moon_pair_counts(int n) {
    if (n < 2) throw std::invalid_argument("pair counts need n >= 2");

    std::vector<BigInt> fact(n + 1), npow(n + 1);
    fact[0] = 1;
    npow[0] = 1;
    for (int i = 1; i <= n; ++i) {
        fact[i] = fact[i - 1] * i;
        npow[i] = npow[i - 1] * n;
    }

    // inner sums S(q) = sum_{k<=q} C(n-k, q-k) n^k / k!, shared by every m
    std::vector<Rational> inner(n);
    for (int q = 0; q < n; ++q) {
        Rational acc(0);
        for (int k = 0; k <= q; ++k)
            acc += make_rational(big_binomial(n - k, q - k) * npow[k], fact[k]);
        inner[q] = acc;
    }

    std::vector<BigInt> counts(n);
    bool consistent = true;
    for (int m = 0; m < n && consistent; ++m) {
        Rational total(0);
        for (int j = 0; j <= n - m - 1; ++j) {
            const int q = m + j;
            BigInt falling;  // (n-1)! / (n-m-j-1)!
            mpz_divexact(falling.get_mpz_t(), fact[n - 1].get_mpz_t(), fact[n - m - j - 1].get_mpz_t());
            Rational term = Rational(big_binomial(q, m) * falling) *
                            rational_pow(Rational(n), 2L * (n - m - j - 2)) * inner[q];
            if (j % 2 == 0)
                total += term;
            else
                total -= term;
        }
        if (!is_integral(total) || total < 0) {
            consistent = false;
            break;
        }
        counts[m] = total.get_num();
    }
    if (consistent) return counts;

    // The alternating sum should always collapse to a nonnegative integer; if
    // it ever does not, recount by brute force where feasible and say so.
    if (n <= 6) {
        std::cerr << "moon_pair_counts: non-integral total at n=" << n
                  << "; falling back to brute-force pair enumeration\n";
        return brute_force_pair_counts(n);
    }
    throw std::runtime_error("moon_pair_counts: non-integral total at n=" + std::to_string(n));
}

BigInt moon_pair_count(int n, int m) {
    if (n < 2) throw std::invalid_argument("pair counts need n >= 2");
    if (m < 0 || m > n - 1) throw std::invalid_argument("common-edge count out of range [0, n-1]");
    return moon_pair_counts(n)[m];
}

namespace {

// Spanning trees of K_d from Prüfer sequences; d >= 2.
std::vector<Edge> prufer_decode(std::span<const int> seq, int d) {
    std::vector<int> degree(d, 1);
    for (int x : seq) ++degree[x];
    std::vector<Edge> edges;
    edges.reserve(d - 1);
    for (int x : seq) {
        int leaf = -1;
        for (int v = 0; v < d; ++v) {
            if (degree[v] == 1) {
                leaf = v;
                break;
            }
        }
        edges.emplace_back(leaf, x);
        degree[leaf] = 0;
        --degree[x];
    }
    int a = -1, b = -1;
    for (int v = 0; v < d; ++v) {
        if (degree[v] == 1) (a < 0 ? a : b) = v;
    }
    edges.emplace_back(a, b);
    return edges;
}

}  // namespace

BigInt lcy_forest_count(const Partition& parts, const Forest& f) {
    const int d = parts.part_count();
    const int n = parts.vertex_count();
    const Graph& host = f.host();
    if (host.vertex_count() != n)
        throw std::invalid_argument("forest host does not match the partition's vertex count");
    if (!host.is_simple())
        throw std::invalid_argument("multipartite host must be simple");
    long long cross_pairs = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            cross_pairs += static_cast<long long>(parts.size(i)) * parts.size(j);
    if (host.edge_count() != cross_pairs)
        throw std::invalid_argument("forest host is not the complete multipartite graph");
    for (const Edge& e : host.edges())
        if (parts.part_of(e.u) == parts.part_of(e.v))
            throw std::invalid_argument("forest host is not the complete multipartite graph");

    const int k = f.component_count();

    // n_ij = vertices of component j inside part i; alpha_j = sum_i (n - n_i) n_ij
    std::vector<std::vector<long>> nij(d, std::vector<long>(k, 0));
    for (int v = 0; v < n; ++v) ++nij[parts.part_of(v)][f.component_of(v)];
    std::vector<BigInt> alpha(k, BigInt(0));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < d; ++i) alpha[j] += BigInt(n - parts.size(i)) * nij[i][j];

    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d, Rational(0)));
    for (int p = 0; p < d; ++p) {
        for (int q = p + 1; q < d; ++q) {
            Rational s(0);
            for (int j = 0; j < k; ++j) {
                if (nij[p][j] == 0 || nij[q][j] == 0) continue;
                s += make_rational(BigInt(nij[p][j]) * nij[q][j], alpha[j]);
            }
            a[p][q] = a[q][p] = s;
        }
    }

    // per-pair edge weight (n - n_p)(n - n_q)(1 - (d-1) a_pq)
    std::vector<std::vector<Rational>> weight(d, std::vector<Rational>(d));
    for (int p = 0; p < d; ++p)
        for (int q = p + 1; q < d; ++q) {
            Rational w = Rational(BigInt(n - parts.size(p)) * (n - parts.size(q))) *
                         (Rational(1) - Rational(d - 1) * a[p][q]);
            weight[p][q] = weight[q][p] = w;
        }

    // sum over the d^{d-2} spanning trees of K_d
    Rational tree_sum(0);
    std::vector<int> seq(std::max(d - 2, 0), 0);
    for (;;) {
        const auto tree = prufer_decode(seq, d);
        Rational prod(1);
        for (const Edge& e : tree) prod *= weight[e.u][e.v];
        tree_sum += prod;
        int pos = static_cast<int>(seq.size()) - 1;
        while (pos >= 0 && seq[pos] == d - 1) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }

    BigInt alpha_prod(1);
    for (const BigInt& aj : alpha) alpha_prod *= aj;
    BigInt denom = big_pow(BigInt(d - 1), static_cast<unsigned long>(d - 2));
    for (int i = 0; i < d; ++i) denom *= BigInt(n - parts.size(i)) * (n - parts.size(i));

    Rational total = Rational(alpha_prod) / Rational(denom) * tree_sum;
    total.canonicalize();
    if (!is_integral(total) || total < 0)
        throw std::runtime_error("lcy_forest_count: total is not a nonnegative integer");
    return total.get_num();
}

Rational edge_probability(const Graph& g, Edge e) {
    const int idx = g.index_of(e);
    if (idx < 0) throw std::invalid_argument("edge not in graph");
    if (!is_connected(g)) throw std::invalid_argument("edge probability needs a connected graph");
    const BigInt total = count_spanning_trees(g);
    const BigInt with_e =
        count_trees_containing(g, Forest(g, {e})) * BigInt(static_cast<long>(g.multiplicity(idx)));
    return make_rational(with_e, total);
}

Rational edge_pair_probability(const Graph& g, Edge e1, Edge e2) {
    if (e1 == e2) throw std::invalid_argument("edges must be distinct (use edge_probability)");
    const int i1 = g.index_of(e1), i2 = g.index_of(e2);
    if (i1 < 0 || i2 < 0) throw std::invalid_argument("edge not in graph");
    if (!is_connected(g)) throw std::invalid_argument("edge pair probability needs a connected graph");
    const BigInt total = count_spanning_trees(g);
    const BigInt with_pair = count_trees_containing(g, Forest(g, {e1, e2})) *
                             BigInt(static_cast<long>(g.multiplicity(i1))) *
                             BigInt(static_cast<long>(g.multiplicity(i2)));
    return make_rational(with_pair, total);
}

std::vector<std::vector<Edge>> enumerate_spanning_trees(const Graph& g, int edge_cap) {
    if (!g.is_simple()) throw std::invalid_argument("tree enumeration requires a simple graph");
    if (g.edge_count() > edge_cap)
        throw InfeasibleError("tree enumeration infeasible: " + std::to_string(g.edge_count()) +
                              " edges exceeds the cap of " + std::to_string(edge_cap));
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const int k = n - 1;

    std::vector<std::vector<Edge>> trees;
    if (k == 0) {
        trees.push_back({});
        return trees;
    }
    if (k > m) return trees;

    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
        UnionFind uf(n);
        bool acyclic = true;
        for (int i : c) {
            const Edge e = g.edge(i);
            if (!uf.merge(e.u, e.v)) {
                acyclic = false;
                break;
            }
        }
        if (acyclic) {  // n-1 acyclic edges necessarily span
            std::vector<Edge> t;
            t.reserve(k);
            for (int i : c) t.push_back(g.edge(i));
            trees.push_back(std::move(t));
        }
        int pos = k - 1;
        while (pos >= 0 && c[pos] == m - k + pos) --pos;
        if (pos < 0) break;
        ++c[pos];
        for (int i = pos + 1; i < k; ++i) c[i] = c[i - 1] + 1;
    }
    return trees;
}

namespace {

// Union-find with undo, no path compression, for forest backtracking.
struct RollbackUnionFind {
    std::vector<int> parent, size;
    std::vector<std::pair<int, int>> joins;  // (child root, parent root)

    explicit RollbackUnionFind(int n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }

    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        joins.emplace_back(b, a);
        return true;
    }

    void undo() {
        auto [child, root] = joins.back();
        joins.pop_back();
        parent[child] = child;
        size[root] -= size[child];
    }
};

}  // namespace

void for_each_forest(const Graph& g, const ForestVisitor& visit, long forest_cap) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    RollbackUnionFind uf(n);
    std::vector<int> chosen;
    std::vector<int> labels(n);
    long visited = 0;

    auto emit = [&] {
        if (++visited > forest_cap)
            throw InfeasibleError("forest enumeration infeasible: more than " +
                                  std::to_string(forest_cap) + " forests");
        for (int v = 0; v < n; ++v) labels[v] = uf.find(v);
        visit(chosen, labels);
    };

    auto rec = [&](auto&& self, int i) -> void {
        if (i == m) {
            emit();
            return;
        }
        self(self, i + 1);  // without edge i
        const Edge e = g.edge(i);
        if (uf.merge(e.u, e.v)) {
            chosen.push_back(i);
            self(self, i + 1);
            chosen.pop_back();
            uf.undo();
        }
    };
    rec(rec, 0);
}

}  // namespace ustlab
