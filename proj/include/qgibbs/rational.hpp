// Exact arbitrary-precision integers and rationals used throughout the
// library. Backed by GMP; rationals are always kept in canonical reduced
// form (positive denominator, gcd(|num|, den) = 1).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qgibbs {

using Int = mpz_class;
using Rational = mpq_class;

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw std::domain_error("rational_pow: 0 to a negative power");
    Rational r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        r = Rational(1) / r;
    }
    r.canonicalize();
    return r;
}

// Parses "3/2", "-7", "1.5", "0.25e2" style inputs into an exact rational.
Rational parse_rational(const std::string& s);

// Correctly rounded decimal rendering with `sig` significant digits
// (round half to even, exact integer arithmetic throughout). Produces
// plain notation for moderate magnitudes and scientific otherwise.
std::string to_decimal(const Rational& r, int sig = 15);

// log2 of a positive rational, accurate to double precision even when the
// value itself overflows double range.
double log2_rational(const Rational& r);

// Nearest double (may overflow to inf for huge values).
inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace qgibbs
