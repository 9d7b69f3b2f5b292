#pragma once

#include <span>
#include <string>
#include <vector>

#include "ustlab/exact_count.hpp"
#include "ustlab/graph.hpp"
#include "ustlab/numeric.hpp"

namespace ustlab {

// Finite probability mass function on nonnegative integers. Exact rational
// masses are the default for closed-form laws; float mode is for Poisson
// references and empirical data. A truncated reference (Poisson) carries its
// tail mass explicitly so distance computations stay honest upper bounds.
class Pmf {
public:
    Pmf() = default;

    static Pmf from_exact(std::vector<Rational> masses);
    static Pmf from_float(std::vector<double> masses, double tail_bound = 0.0);
    static Pmf from_counts(std::span<const std::uint64_t> counts, std::uint64_t total);

    bool exact() const { return exact_; }
    // largest support point (trailing zero masses are trimmed); -1 when empty
    int support_max() const { return static_cast<int>(dmass_.size()) - 1; }
    double mass(int m) const;
    const Rational& exact_mass(int m) const;
    double tail_bound() const { return tail_; }

    double moment(int r) const;
    double mean() const { return moment(1); }
    double variance() const;
    Rational exact_moment(int r) const;
    Rational exact_mean() const { return exact_moment(1); }
    Rational exact_variance() const;

    bool operator==(const Pmf&) const = default;

private:
    bool exact_ = false;
    std::vector<Rational> rmass_;  // exact mode only
    std::vector<double> dmass_;    // always populated
    double tail_ = 0.0;
};

// Half L1 distance over the union support, plus any truncation tails, so the
// result upper-bounds the true total variation distance.
double tv_distance(const Pmf& p, const Pmf& q);

// Poisson(lambda) truncated at `cap`; cap < 0 picks the smallest cap with
// tail below 1e-12. The tail is recorded, not renormalized.
Pmf poisson_pmf(double lambda, int cap = -1);

// Binomial(n, p) with exact rational p.
Pmf binomial_pmf(int n, const Rational& p);

// Law of the number of common edges of two independent uniform spanning
// trees of K_n: pair counts divided by n^{2(n-2)}, exact.
Pmf exact_pmf_complete(int n);

// Same law for an arbitrary connected graph, by inclusion-exclusion over the
// binomial moments B_s = sum over s-edge forests F of P(F in T)^2. Exact;
// throws InfeasibleError when the forest count exceeds the cap.
Pmf exact_pmf_general(const Graph& g, long forest_cap = kForestEnumerationCap);

// Closed forms for the mean 2(n-1)/n and variance (n-1)(n-2)(2n-3)/n^3.
Rational exact_mean_complete(int n);
Rational exact_variance_complete(int n);

// Limit of the expected number of common edges for complete multipartite
// graphs with part fractions c (positive, summing to 1):
//   sum_{i<j} c_i c_j (2 - c_i - c_j)^2 / ((1-c_i)^2 (1-c_j)^2).
double limiting_mean_multipartite(std::span<const double> c);

// Stirling numbers of the second kind, and the r-th raw moment of
// Poisson(lambda) via sum_s S(r,s) lambda^s.
BigInt stirling2(int r, int s);
double bell_moment(double lambda, int r);

struct ChenSteinBound {
    double shifted;  // 50/n, against Poisson(2 - 2/n)
    double poisson2;  // 52/n, against Poisson(2)
};
ChenSteinBound chen_stein_bound(int n);

// Bonferroni lower / union upper bound for the probability that k >= 3
// independent uniform spanning trees of K_n share at least one edge.
struct KTreeBounds {
    double lower;
    double upper;
};
KTreeBounds k_tree_bounds(int n, int k);

// JSON schema: {"support":[m,...], "mass":["p/q",...] or [float,...],
// "exact":bool} with "tail_bound" present when nonzero; masses are sparse
// (zero-mass points omitted). CSV has columns m,mass with float masses.
std::string pmf_to_json(const Pmf& p);
Pmf pmf_from_json(const std::string& text);
std::string pmf_to_csv(const Pmf& p);

}  // namespace ustlab
