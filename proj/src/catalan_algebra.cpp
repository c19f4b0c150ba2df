#include "qgibbs/catalan_algebra.hpp"

#include <stdexcept>

#include "qgibbs/models.hpp"

namespace qgibbs {

long RatPoly::deg() const {
    for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i)
        if (c[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.at(static_cast<long>(i)) + b.at(static_cast<long>(i));
    return r;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) { return poly_add(a, poly_scale(b, Rational(-1))); }

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly::zero();
    RatPoly r;
    r.c.assign(a.c.size() + b.c.size(), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    return r;
}

RatPoly poly_scale(const RatPoly& a, const Rational& r) {
    RatPoly out = a;
    for (auto& v : out.c) v *= r;
    return out;
}

namespace {

const RatPoly kDelta{{Rational(1), Rational(-4)}};  // 1 - 4z

}  // namespace

SurdElem SurdElem::constant(const Rational& v) {
    SurdElem e;
    e.a = RatPoly::from({v});
    e.b = RatPoly::zero();
    e.s = RatPoly::from({Rational(1)});
    return e;
}

SurdElem elem_add(const SurdElem& x, const SurdElem& y) {
    SurdElem r;
    r.a = poly_add(poly_mul(x.a, y.s), poly_mul(y.a, x.s));
    r.b = poly_add(poly_mul(x.b, y.s), poly_mul(y.b, x.s));
    r.s = poly_mul(x.s, y.s);
    return r;
}

SurdElem elem_sub(const SurdElem& x, const SurdElem& y) { return elem_add(x, elem_scale(y, Rational(-1))); }

SurdElem elem_mul(const SurdElem& x, const SurdElem& y) {
    SurdElem r;
    r.a = poly_add(poly_mul(x.a, y.a), poly_mul(kDelta, poly_mul(x.b, y.b)));
    r.b = poly_add(poly_mul(x.a, y.b), poly_mul(x.b, y.a));
    r.s = poly_mul(x.s, y.s);
    return r;
}

SurdElem elem_scale(const SurdElem& x, const Rational& r) {
    SurdElem out = x;
    out.a = poly_scale(out.a, r);
    out.b = poly_scale(out.b, r);
    return out;
}

SurdElem elem_inv(const SurdElem& x) {
    // 1/((a + b R)/s) = s (a - b R) / (a^2 - b^2 Delta)
    SurdElem r;
    r.a = poly_mul(x.s, x.a);
    r.b = poly_scale(poly_mul(x.s, x.b), Rational(-1));
    r.s = poly_sub(poly_mul(x.a, x.a), poly_mul(kDelta, poly_mul(x.b, x.b)));
    if (r.s.is_zero()) throw std::domain_error("elem_inv: zero norm");
    return r;
}

SurdElem elem_pow(const SurdElem& x, long e) {
    if (e < 0) return elem_pow(elem_inv(x), -e);
    SurdElem r = SurdElem::one(), base = x;
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1UL) r = elem_mul(r, base);
        k >>= 1;
        if (k > 0) base = elem_mul(base, base);
    }
    return r;
}

Rational elem_coeff(const SurdElem& x, long n) {
    long ds = x.s.deg();
    if (ds < 0) throw std::domain_error("elem_coeff: zero denominator");
    long v = 0;
    while (v <= ds && x.s.at(v) == 0) ++v;  // valuation of s

    long need = n + v;
    // sqrt(1-4z) coefficients: d_0 = 1, d_j = -2 Cat_{j-1}
    std::vector<Int> cat = catalan_numbers(need > 0 ? need : 0);
    long db = x.b.deg();
    auto sqrt_coeff = [&](long j) -> Rational {
        if (j == 0) return Rational(1);
        return Rational(-2) * Rational(cat[static_cast<std::size_t>(j - 1)]);
    };

    // numerator series u_j = a_j + sum_i b_i d_{j-i}
    std::vector<Rational> u(static_cast<std::size_t>(need) + 1);
    for (long j = 0; j <= need; ++j) {
        Rational acc = x.a.at(j);
        for (long i = 0; i <= db && i <= j; ++i) {
            const Rational bi = x.b.at(i);
            if (bi == 0) continue;
            acc += bi * sqrt_coeff(j - i);
        }
        u[static_cast<std::size_t>(j)] = acc;
    }
    for (long j = 0; j < v; ++j)
        if (u[static_cast<std::size_t>(j)] != 0)
            throw std::logic_error("elem_coeff: element is not a power series");

    // divide the shifted numerator by the shifted denominator
    Rational s0 = x.s.at(v);
    std::vector<Rational> r(static_cast<std::size_t>(n) + 1);
    for (long j = 0; j <= n; ++j) {
        Rational acc = u[static_cast<std::size_t>(j + v)];
        for (long i = 1; i <= ds - v && i <= j; ++i) {
            const Rational si = x.s.at(v + i);
            if (si == 0) continue;
            acc -= si * r[static_cast<std::size_t>(j - i)];
        }
        acc /= s0;
        acc.canonicalize();
        r[static_cast<std::size_t>(j)] = acc;
    }
    return r[static_cast<std::size_t>(n)];
}

std::vector<Rational> perm_fixed_point_sums(const Rational& q, long n, int rmax) {
    if (rmax < 0 || rmax > 3) throw std::invalid_argument("perm_fixed_point_sums: rmax must be 0..3");
    // H = (1 + 2z - sqrt(1-4z)) / (2(2+z))
    SurdElem H;
    H.a = RatPoly::from({Rational(1), Rational(2)});
    H.b = RatPoly::from({Rational(-1)});
    H.s = RatPoly::from({Rational(4), Rational(2)});

    SurdElem X = elem_scale(H, q);
    SurdElem D = elem_sub(SurdElem::one(), X);
    SurdElem Dinv = elem_inv(D);

    // sum_k k^r x^k = P_r(x)/(1-x)^{r+1} with P_0 = 1, P_1 = x,
    // P_2 = x(1+x), P_3 = x(1+4x+x^2)
    std::vector<Rational> out;
    SurdElem dpow = Dinv;
    for (int r = 0; r <= rmax; ++r) {
        SurdElem poly;
        switch (r) {
            case 0: poly = SurdElem::one(); break;
            case 1: poly = X; break;
            case 2: poly = elem_mul(X, elem_add(SurdElem::one(), X)); break;
            default: {
                SurdElem t = elem_add(SurdElem::one(), elem_scale(X, Rational(4)));
                t = elem_add(t, elem_mul(X, X));
                poly = elem_mul(X, t);
            }
        }
        SurdElem S = elem_mul(H, elem_mul(poly, dpow));
        out.push_back(elem_coeff(S, n + 1));
        if (r < rmax) dpow = elem_mul(dpow, Dinv);
    }
    return out;
}

}  // namespace qgibbs
