// Exact single-coefficient extraction for series that live in the quadratic
// extension Q(z)[sqrt(1-4z)]: elements are (a(z) + b(z) sqrt(1-4z)) / s(z)
// with polynomial a, b, s. Products and inverses stay in this form, and
// [z^n] of an element costs O(n * deg) big-integer operations, so Gibbs
// partition values and moment sums are reachable at n in the thousands
// for models whose generating functions are Catalan-algebraic.
//
// Used for the fixed-point-biased permutation model, whose full f_{n,k}
// rows have no closed form amenable to large n.
#pragma once

#include <vector>

#include "qgibbs/rational.hpp"

namespace qgibbs {

struct RatPoly {
    std::vector<Rational> c;  // c[i] multiplies z^i; trailing zeros allowed

    static RatPoly zero() { return {}; }
    static RatPoly from(std::vector<Rational> v) { return {std::move(v)}; }
    long deg() const;
    bool is_zero() const { return deg() < 0; }
    Rational at(long i) const {
        return (i >= 0 && i < static_cast<long>(c.size())) ? c[static_cast<std::size_t>(i)] : Rational(0);
    }
};

RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_scale(const RatPoly& a, const Rational& r);

struct SurdElem {
    RatPoly a, b, s;  // (a + b sqrt(1-4z)) / s

    static SurdElem constant(const Rational& v);
    static SurdElem one() { return constant(Rational(1)); }
};

SurdElem elem_add(const SurdElem& x, const SurdElem& y);
SurdElem elem_sub(const SurdElem& x, const SurdElem& y);
SurdElem elem_mul(const SurdElem& x, const SurdElem& y);
SurdElem elem_scale(const SurdElem& x, const Rational& r);
SurdElem elem_inv(const SurdElem& x);
SurdElem elem_pow(const SurdElem& x, long e);

// [z^n] of the element, assuming it is a genuine power series (the
// denominator's valuation is cancelled by the numerator series).
Rational elem_coeff(const SurdElem& x, long n);

// V[r] = sum_k k^r q^k f_{n,k} for the fixed-point statistic of
// pattern-avoiding permutations, r = 0..rmax (rmax <= 3). V[0] is the
// partition value f_n(q).
std::vector<Rational> perm_fixed_point_sums(const Rational& q, long n, int rmax);

}  // namespace qgibbs
