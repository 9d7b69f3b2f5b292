#include "ustlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ustlab {

namespace {

double ipow(double x, int r) {
    double acc = 1.0;
    for (int i = 0; i < r; ++i) acc *= x;
    return acc;
}

}  // namespace

Pmf Pmf::from_exact(std::vector<Rational> masses) {
    while (!masses.empty() && masses.back() == 0) masses.pop_back();
    Rational sum(0);
    for (const Rational& r : masses) {
        if (r < 0) throw std::invalid_argument("pmf mass must be nonnegative");
        sum += r;
    }
    if (sum != 1) throw std::invalid_argument("exact pmf masses must sum to 1");
    Pmf p;
    p.exact_ = true;
    p.dmass_.reserve(masses.size());
    for (const Rational& r : masses) p.dmass_.push_back(to_double(r));
    p.rmass_ = std::move(masses);
    return p;
}

Pmf Pmf::from_float(std::vector<double> masses, double tail_bound) {
    while (!masses.empty() && masses.back() == 0.0) masses.pop_back();
    double sum = 0.0;
    for (double x : masses) {
        if (x < 0) throw std::invalid_argument("pmf mass must be nonnegative");
        sum += x;
    }
    if (tail_bound < 0) throw std::invalid_argument("tail bound must be nonnegative");
    if (std::abs(sum + tail_bound - 1.0) > 1e-12)
        throw std::invalid_argument("float pmf masses must sum to 1 within 1e-12");
    Pmf p;
    p.dmass_ = std::move(masses);
    p.tail_ = tail_bound;
    return p;
}

Pmf Pmf::from_counts(std::span<const std::uint64_t> counts, std::uint64_t total) {
    if (total == 0) throw std::invalid_argument("empirical pmf needs at least one observation");
    std::uint64_t check = 0;
    std::vector<double> masses;
    masses.reserve(counts.size());
    for (std::uint64_t c : counts) {
        check += c;
        masses.push_back(static_cast<double>(c) / static_cast<double>(total));
    }
    if (check != total) throw std::invalid_argument("counts do not sum to the trial total");
    return from_float(std::move(masses));
}

double Pmf::mass(int m) const {
    if (m < 0 || m >= static_cast<int>(dmass_.size())) return 0.0;
    return dmass_[m];
}

const Rational& Pmf::exact_mass(int m) const {
    static const Rational zero(0);
    if (!exact_) throw std::logic_error("pmf is not in exact mode");
    if (m < 0 || m >= static_cast<int>(rmass_.size())) return zero;
    return rmass_[m];
}

double Pmf::moment(int r) const {
    double acc = 0.0;
    for (int m = 0; m < static_cast<int>(dmass_.size()); ++m)
        acc += ipow(static_cast<double>(m), r) * dmass_[m];
    return acc;
}

double Pmf::variance() const {
    const double m1 = moment(1);
    return moment(2) - m1 * m1;
}

Rational Pmf::exact_moment(int r) const {
    if (!exact_) throw std::logic_error("pmf is not in exact mode");
    Rational acc(0);
    for (int m = 0; m < static_cast<int>(rmass_.size()); ++m) {
        BigInt mp = big_pow(BigInt(m), static_cast<unsigned long>(r));
        acc += Rational(mp) * rmass_[m];
    }
    return acc;
}

Rational Pmf::exact_variance() const {
    const Rational m1 = exact_moment(1);
    return exact_moment(2) - m1 * m1;
}

double tv_distance(const Pmf& p, const Pmf& q) {
    const int top = std::max(p.support_max(), q.support_max());
    double acc = 0.0;
    for (int m = 0; m <= top; ++m) acc += std::abs(p.mass(m) - q.mass(m));
    return acc / 2.0 + p.tail_bound() + q.tail_bound();
}

Pmf poisson_pmf(double lambda, int cap) {
    if (!(lambda > 0)) throw std::invalid_argument("poisson rate must be positive");
    constexpr double kTailTarget = 1e-12;
    constexpr int kHardCap = 100000;

    std::vector<double> masses;
    double term = std::exp(-lambda);
    double cum = 0.0;
    int m = 0;
    while (true) {
        masses.push_back(term);
        cum += term;
        if (cap >= 0) {
            if (m == cap) break;
        } else if (1.0 - cum < kTailTarget && m >= static_cast<int>(lambda)) {
            break;
        }
        if (m >= kHardCap) throw std::invalid_argument("poisson cap exploded; check the rate");
        term = term * lambda / (m + 1);
        ++m;
    }
    return Pmf::from_float(std::move(masses), std::max(0.0, 1.0 - cum));
}

Pmf binomial_pmf(int n, const Rational& p) {
    if (n < 0) throw std::invalid_argument("binomial needs n >= 0");
    if (p < 0 || p > 1) throw std::invalid_argument("binomial probability outside [0,1]");
    const Rational q = Rational(1) - p;
    std::vector<Rational> masses;
    masses.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        Rational m = Rational(big_binomial(n, k)) * rational_pow(p, k) * rational_pow(q, n - k);
        masses.push_back(m);
    }
    return Pmf::from_exact(std::move(masses));
}

Pmf exact_pmf_complete(int n) {
    if (n < 2) throw std::invalid_argument("common-edge law needs n >= 2");
    const auto counts = moon_pair_counts(n);
    const BigInt total = big_pow(BigInt(n), static_cast<unsigned long>(2 * (n - 2)));
    std::vector<Rational> masses;
    masses.reserve(counts.size());
    for (const BigInt& c : counts) masses.push_back(make_rational(c, total));
    return Pmf::from_exact(std::move(masses));
}

Pmf exact_pmf_general(const Graph& g, long forest_cap) {
    const int n = g.vertex_count();
    if (!is_connected(g)) throw std::invalid_argument("common-edge law needs a connected graph");
    const BigInt total = count_spanning_trees(g);

    // B_s * t^2 = sum over s-edge forests of (#trees containing F)^2, with
    // contraction counts memoized on the induced vertex partition
    std::vector<BigInt> weight(n, BigInt(0));
    std::map<std::vector<int>, BigInt> memo;
    std::vector<int> key(n);

    for_each_forest(
        g,
        [&](std::span<const int> picked, std::span<const int> component_of) {
            int next = 0;
            std::map<int, int> relabel;
            for (int v = 0; v < n; ++v) {
                auto [it, fresh] = relabel.try_emplace(component_of[v], next);
                if (fresh) ++next;
                key[v] = it->second;
            }
            auto [it, fresh] = memo.try_emplace(key);
            if (fresh) {
                // quotient Laplacian of the current partition
                const int k = next;
                if (k == 1) {
                    it->second = 1;
                } else {
                    std::vector<std::vector<BigInt>> lap(k - 1, std::vector<BigInt>(k - 1, BigInt(0)));
                    for (int ei = 0; ei < g.edge_count(); ++ei) {
                        const Edge e = g.edge(ei);
                        const int cu = key[e.u], cv = key[e.v];
                        if (cu == cv) continue;
                        const BigInt w(static_cast<long>(g.multiplicity(ei)));
                        if (cu > 0) lap[cu - 1][cu - 1] += w;
                        if (cv > 0) lap[cv - 1][cv - 1] += w;
                        if (cu > 0 && cv > 0) {
                            lap[cu - 1][cv - 1] -= w;
                            lap[cv - 1][cu - 1] -= w;
                        }
                    }
                    it->second = bareiss_determinant(std::move(lap));
                }
            }
            weight[picked.size()] += it->second * it->second;
        },
        forest_cap);

    // P(X = m) = sum_{s >= m} (-1)^{s-m} C(s,m) B_s
    const BigInt total_sq = total * total;
    std::vector<Rational> masses(n);
    for (int m = 0; m < n; ++m) {
        BigInt acc(0);
        for (int s = m; s < n; ++s) {
            const BigInt term = big_binomial(s, m) * weight[s];
            if ((s - m) % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        masses[m] = make_rational(acc, total_sq);
        if (masses[m] < 0 || masses[m] > 1)
            throw std::runtime_error("inclusion-exclusion produced an invalid mass");
    }
    return Pmf::from_exact(std::move(masses));
}

Rational exact_mean_complete(int n) {
    if (n < 2) throw std::invalid_argument("mean formula needs n >= 2");
    return make_rational(BigInt(2) * (n - 1), BigInt(n));
}

Rational exact_variance_complete(int n) {
    if (n < 2) throw std::invalid_argument("variance formula needs n >= 2");
    return make_rational(BigInt(n - 1) * (n - 2) * (2 * n - 3), BigInt(n) * n * n);
}

double limiting_mean_multipartite(std::span<const double> c) {
    if (c.size() < 2) throw std::invalid_argument("need at least two part fractions");
    double sum = 0.0;
    for (double ci : c) {
        if (!(ci > 0)) throw std::invalid_argument("part fractions must be positive");
        sum += ci;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("part fractions must sum to 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double num = c[i] * c[j] * ipow(2.0 - c[i] - c[j], 2);
            const double den = ipow(1.0 - c[i], 2) * ipow(1.0 - c[j], 2);
            acc += num / den;
        }
    }
    return acc;
}

BigInt stirling2(int r, int s) {
    if (s < 0 || r < 0 || s > r) throw std::invalid_argument("stirling2 needs 0 <= s <= r");
    std::vector<std::vector<BigInt>> table(r + 1, std::vector<BigInt>(r + 1, BigInt(0)));
    table[0][0] = 1;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= i; ++j) table[i][j] = BigInt(j) * table[i - 1][j] + table[i - 1][j - 1];
    return table[r][s];
}

double bell_moment(double lambda, int r) {
    if (r < 0) throw std::invalid_argument("moment order must be nonnegative");
    double acc = 0.0;
    for (int s = 0; s <= r; ++s) acc += stirling2(r, s).get_d() * ipow(lambda, s);
    return acc;
}

ChenSteinBound chen_stein_bound(int n) {
    if (n < 2) throw std::invalid_argument("bound needs n >= 2");
    return {50.0 / n, 52.0 / n};
}

KTreeBounds k_tree_bounds(int n, int k) {
    if (k < 3) throw std::invalid_argument("k-tree bounds are for k >= 3");
    if (n < 4) throw std::invalid_argument("k-tree bounds need n >= 4");
    const double nn = n;
    const double upper = nn * (nn - 1) / 2.0 * ipow(2.0 / nn, k);
    const double adjacent = nn * (nn - 1) * (nn - 2) / 2.0 * ipow(3.0 / (nn * nn), k);
    const double disjoint = nn * (nn - 1) * (nn - 2) * (nn - 3) / 8.0 * ipow(4.0 / (nn * nn), k);
    return {upper - adjacent - disjoint, upper};
}

std::string pmf_to_json(const Pmf& p) {
    nlohmann::json j;
    j["support"] = nlohmann::json::array();
    j["mass"] = nlohmann::json::array();
    for (int m = 0; m <= p.support_max(); ++m) {
        if (p.exact()) {
            if (p.exact_mass(m) == 0) continue;
            j["support"].push_back(m);
            j["mass"].push_back(to_string(p.exact_mass(m)));
        } else {
            if (p.mass(m) == 0.0) continue;
            j["support"].push_back(m);
            j["mass"].push_back(p.mass(m));
        }
    }
    j["exact"] = p.exact();
    if (p.tail_bound() > 0) j["tail_bound"] = p.tail_bound();
    return j.dump(2);
}

Pmf pmf_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const auto& support = j.at("support");
    const auto& mass = j.at("mass");
    if (support.size() != mass.size())
        throw std::invalid_argument("pmf json: support and mass lengths differ");
    const bool exact = j.at("exact").get<bool>();
    int top = -1;
    for (const auto& s : support) top = std::max(top, s.get<int>());

    if (exact) {
        std::vector<Rational> masses(top + 1, Rational(0));
        for (std::size_t i = 0; i < support.size(); ++i)
            masses[support[i].get<int>()] = rational_from_string(mass[i].get<std::string>());
        return Pmf::from_exact(std::move(masses));
    }
    std::vector<double> masses(top + 1, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i)
        masses[support[i].get<int>()] = mass[i].get<double>();
    return Pmf::from_float(std::move(masses), j.value("tail_bound", 0.0));
}

std::string pmf_to_csv(const Pmf& p) {
    std::ostringstream out;
    out << "m,mass\n";
    out.precision(17);
    for (int m = 0; m <= p.support_max(); ++m) {
        if (p.mass(m) == 0.0 && (!p.exact() || p.exact_mass(m) == 0)) continue;
        out << m << ',' << p.mass(m) << '\n';
    }
    return out.str();
}

}  // namespace ustlab
