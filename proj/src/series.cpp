#include "qgibbs/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgibbs {

Series Series::truncated(std::size_t order) const {
    std::size_t n = std::min(order, this->order());
    Series r(order);
    for (std::size_t i = 0; i <= n; ++i) r[i] = c_[i];
    return r;
}

Series series_add(const Series& a, const Series& b) {
    std::size_t n = std::min(a.order(), b.order());
    Series r(n);
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] + b[i];
    return r;
}

Series series_sub(const Series& a, const Series& b) {
    std::size_t n = std::min(a.order(), b.order());
    Series r(n);
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] - b[i];
    return r;
}

Series series_scale(const Series& a, const Rational& c) {
    Series r(a.order());
    for (std::size_t i = 0; i <= a.order(); ++i) r[i] = a[i] * c;
    return r;
}

Series series_mul(const Series& a, const Series& b) {
    std::size_t n = std::min(a.order(), b.order());
    Series r(n);
    Rational t;
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            r[i + j] += t;
        }
    }
    return r;
}

Series series_recip(const Series& a) {
    if (a[0] == 0) throw std::domain_error("series_recip: zero constant term");
    std::size_t n = a.order();
    Series r(n);
    Rational inv0 = Rational(1) / a[0];
    r[0] = inv0;
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc(0);
        for (std::size_t j = 1; j <= m; ++j) {
            if (a[j] == 0) continue;
            acc += a[j] * r[m - j];
        }
        r[m] = -acc * inv0;
    }
    return r;
}

Series series_sqrt(const Series& a) {
    if (a[0] != 1) throw std::domain_error("series_sqrt: constant term must be 1");
    std::size_t n = a.order();
    Series s(n);
    s[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc(0);
        for (std::size_t i = 1; i < m; ++i) acc += s[i] * s[m - i];
        s[m] = (a[m] - acc) / 2;
    }
    return s;
}

Series series_pow_int(const Series& a, long e) {
    if (e < 0) {
        if (a[0] == 0) throw std::domain_error("series_pow_int: negative power of series with zero constant term");
        return series_pow_int(series_recip(a), -e);
    }
    Series r = Series::constant(Rational(1), a.order());
    Series base = a;
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1UL) r = series_mul(r, base);
        k >>= 1;
        if (k > 0) base = series_mul(base, base);
    }
    return r;
}

Series series_hadamard(const Series& a, const Series& b) {
    std::size_t n = std::min(a.order(), b.order());
    Series r(n);
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] * b[i];
    return r;
}

Series catalan_series(std::size_t order) {
    Series c(order);
    c[0] = 1;
    // C_{m} = sum_{i} C_i C_{m-1-i}
    for (std::size_t m = 1; m <= order; ++m) {
        Rational acc(0);
        for (std::size_t i = 0; i < m; ++i) acc += c[i] * c[m - 1 - i];
        c[m] = acc;
    }
    return c;
}

Series motzkin_series(std::size_t order) {
    return weighted_motzkin_series(Rational(1), Rational(1), order);
}

Series weighted_motzkin_series(const Rational& p0, const Rational& w, std::size_t order) {
    Series m(order);
    m[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        Rational acc = p0 * m[n - 1];
        if (n >= 2) {
            Rational conv(0);
            for (std::size_t i = 0; i <= n - 2; ++i) conv += m[i] * m[n - 2 - i];
            acc += w * conv;
        }
        m[n] = acc;
    }
    return m;
}

}  // namespace qgibbs
