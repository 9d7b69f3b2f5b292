#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ustlab/graph.hpp"
#include "ustlab/numeric.hpp"

namespace ustlab {

// Thrown when an exhaustive enumeration would exceed its configured cap.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kEnumerationEdgeCap = 24;       // enumerate_spanning_trees
inline constexpr long kForestEnumerationCap = 2'000'000;  // for_each_forest

// Exact determinant by fraction-free (Bareiss) elimination. Exposed mainly
// for tests and benchmarks.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

// Kirchhoff count: any cofactor of the Laplacian, parallel edges weighted by
// multiplicity. 0 when disconnected, 1 when n == 1.
BigInt count_spanning_trees(const Graph& g);

// Number of spanning trees of g containing every edge of f; equals
// count_spanning_trees(contract_forest(g, f)).
BigInt count_trees_containing(const Graph& g, const Forest& f);

// (n_1 n_2 ... n_k) n^{k-2} for a forest on n vertices with the given
// component sizes; the k = 1 case goes through exact rationals (n * n^{-1} = 1).
BigInt cayley_forest_count(int n, std::span<const int> component_sizes);

// Number of ordered pairs of spanning trees of the complete graph K_n with
// exactly m common edges, via the alternating double sum evaluated over exact
// rationals (intermediate powers of n can carry negative exponents).
// Integrality of the total is asserted; if it ever failed the value would be
// recomputed by brute force for n <= 6 and reported, rather than guessed.
BigInt moon_pair_count(int n, int m);
std::vector<BigInt> moon_pair_counts(int n);  // all m = 0..n-1, shared inner sums

// Number of spanning trees of the complete multipartite graph on `parts`
// containing the spanning forest f, via the Li-Chen-Yan formula: sums a
// rational weight over the d^{d-2} spanning trees of K_d (Prüfer
// enumeration). All arithmetic exact; integrality asserted.
BigInt lcy_forest_count(const Partition& parts, const Forest& f);

// Probability that a uniform random spanning tree contains e, exact and
// reduced. Parallel edges count per pair: the numerator carries the edge's
// multiplicity so that probabilities over all pairs still sum to n-1.
Rational edge_probability(const Graph& g, Edge e);
Rational edge_pair_probability(const Graph& g, Edge e1, Edge e2);

// Brute-force oracle: filters all (n-1)-subsets of the edge set. Trees are
// returned in lexicographic edge-index order. Requires a simple graph with
// at most `edge_cap` edges.
std::vector<std::vector<Edge>> enumerate_spanning_trees(const Graph& g,
                                                        int edge_cap = kEnumerationEdgeCap);

// Visits every acyclic edge subset of g exactly once (the empty forest
// included). `edge_indices` indexes into g.edges(); `component_of` maps each
// vertex to a component label of the current forest (labels are union-find
// roots, not normalized). Throws InfeasibleError beyond `forest_cap` visits.
using ForestVisitor = std::function<void(std::span<const int> edge_indices,
                                         std::span<const int> component_of)>;
void for_each_forest(const Graph& g, const ForestVisitor& visit,
                     long forest_cap = kForestEnumerationCap);

}  // namespace ustlab
