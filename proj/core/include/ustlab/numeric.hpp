#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ustlab {

// All raw counts (spanning-tree counts, pair counts) are arbitrary precision;
// probabilities derived from them are exact reduced fractions.
using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt big_binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt big_factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// base^e with negative exponents allowed; base must be nonzero when e < 0.
inline Rational rational_pow(const Rational& base, long e) {
    if (e >= 0) {
        Rational r(big_pow(base.get_num(), static_cast<unsigned long>(e)),
                   big_pow(base.get_den(), static_cast<unsigned long>(e)));
        r.canonicalize();
        return r;
    }
    if (base == 0) throw std::domain_error("rational_pow: 0 raised to a negative exponent");
    Rational r(big_pow(base.get_den(), static_cast<unsigned long>(-e)),
               big_pow(base.get_num(), static_cast<unsigned long>(-e)));
    r.canonicalize();
    return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline double to_double(const Rational& r) { return r.get_d(); }

// Decimal strings; counts serialize this way so JSON output never loses precision.
inline std::string to_string(const BigInt& v) { return v.get_str(); }
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: '" + s + "'");
    r.canonicalize();
    return r;
}

}  // namespace ustlab
