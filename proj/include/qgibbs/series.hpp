// Truncated univariate power series with exact rational coefficients.
// A Series of order N stores coefficients of z^0..z^N inclusive; binary
// operations truncate to the minimum order of their operands. All
// arithmetic is exact.
#pragma once

#include <cstddef>
#include <vector>

#include "qgibbs/rational.hpp"

namespace qgibbs {

class Series {
public:
    explicit Series(std::size_t order) : c_(order + 1) {}
    Series(std::size_t order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        c_.resize(order + 1);
    }

    std::size_t order() const { return c_.size() - 1; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    Rational& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    Series truncated(std::size_t order) const;

    static Series constant(const Rational& v, std::size_t order) {
        Series s(order);
        s.c_[0] = v;
        return s;
    }
    // 1 + c*z^k
    static Series one_plus(const Rational& c, std::size_t k, std::size_t order) {
        Series s(order);
        s.c_[0] = 1;
        if (k <= order) s.c_[k] += c;
        return s;
    }

private:
    std::vector<Rational> c_;
};

Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_scale(const Series& a, const Rational& c);
Series series_mul(const Series& a, const Series& b);

// Multiplicative inverse; requires a nonzero constant term.
Series series_recip(const Series& a);

// Square root; requires constant term 1. Coefficient recurrence from
// s*s = a, so the result is exact.
Series series_sqrt(const Series& a);

// a^e for integer e (repeated squaring; negative e via series_recip).
Series series_pow_int(const Series& a, long e);

// Coefficient-wise product.
Series series_hadamard(const Series& a, const Series& b);

// Catalan generating function: coefficients 1, 1, 2, 5, 14, ...
Series catalan_series(std::size_t order);

// Motzkin generating function: coefficients 1, 1, 2, 4, 9, 21, ...
Series motzkin_series(std::size_t order);

// Weighted Motzkin generating function M = 1 + p0*z*M + w*z^2*M^2,
// where w = p_down * p_up.
Series weighted_motzkin_series(const Rational& p0, const Rational& w, std::size_t order);

}  // namespace qgibbs
