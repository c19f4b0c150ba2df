#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qgibbs/rational.hpp"
#include "qgibbs/series.hpp"

using namespace qgibbs;

namespace {

Series from_ints(std::initializer_list<long> v, std::size_t order) {
    Series s(order);
    std::size_t i = 0;
    for (long x : v) s[i++] = Rational(x);
    return s;
}

Series geometric(std::size_t order) {
    Series s(order);
    for (std::size_t i = 0; i <= order; ++i) s[i] = 1;
    return s;
}

Series random_series(std::mt19937& rng, std::size_t order, bool unit_constant) {
    Series s(order);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    for (std::size_t i = 0; i <= order; ++i) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        s[i] = r;
    }
    if (unit_constant) s[0] = 1;
    return s;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("1.5") == Rational(3, 2));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("2") == Rational(2));
    CHECK(parse_rational("1e3") == Rational(1000));
    CHECK(parse_rational("2.5e-2") == Rational(1, 40));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));

    CHECK(to_decimal(Rational(1, 5)) == "0.2");
    CHECK(to_decimal(Rational(2, 5)) == "0.4");
    CHECK(to_decimal(Rational(1, 3)) == "0.333333333333333");
    CHECK(to_decimal(Rational(2, 3)) == "0.666666666666667");
    CHECK(to_decimal(Rational(0)) == "0");
    CHECK(to_decimal(Rational(-7, 2)) == "-3.5");
    CHECK(to_decimal(Rational(Int("123456789012345678901234567890"))) == "1.23456789012346e+29");
    // round half to even at the 15th digit
    CHECK(to_decimal(Rational(Int("1000000000000005"), Int("10"))) == "100000000000000");
    CHECK(to_decimal(Rational(Int("1000000000000015"), Int("10"))) == "100000000000002");
    CHECK(to_decimal(Rational(Int("1000000000000016"), Int("10"))) == "100000000000002");
}

TEST_CASE("log2 of huge rationals") {
    Rational big = rational_pow(Rational(4), 2000);
    CHECK(log2_rational(big) == doctest::Approx(4000.0).epsilon(1e-12));
    CHECK(log2_rational(Rational(1, 8)) == doctest::Approx(-3.0));
}

TEST_CASE("series_mul basics") {
    // (1+z)(1-z) = 1 - z^2
    Series a = from_ints({1, 1}, 6), b = from_ints({1, -1}, 6);
    Series p = series_mul(a, b);
    CHECK(p[0] == 1);
    CHECK(p[1] == 0);
    CHECK(p[2] == -1);
    for (std::size_t i = 3; i <= 6; ++i) CHECK(p[i] == 0);

    // geometric^2 has coefficients 1,2,3,...
    Series g2 = series_mul(geometric(8), geometric(8));
    for (std::size_t i = 0; i <= 8; ++i) CHECK(g2[i] == Rational(static_cast<long>(i) + 1));

    // [z^3] C(z)^2 = 14
    Series c = catalan_series(8);
    Series cc = series_mul(c, c);
    CHECK(cc[3] == 14);

    // mixed orders truncate to the minimum
    CHECK(series_mul(Series(3), Series(9)).order() == 3);
}

TEST_CASE("series_recip") {
    Series g = series_recip(from_ints({1, -1}, 8));
    for (std::size_t i = 0; i <= 8; ++i) CHECK(g[i] == 1);

    Series g2 = series_recip(from_ints({1, -2}, 8));
    Rational p(1);
    for (std::size_t i = 0; i <= 8; ++i) {
        CHECK(g2[i] == p);
        p *= 2;
    }

    // 1/(1 - z - z^2) = Fibonacci
    Series fib = series_recip(from_ints({1, -1, -1}, 7));
    long expect[] = {1, 1, 2, 3, 5, 8, 13, 21};
    for (std::size_t i = 0; i <= 7; ++i) CHECK(fib[i] == expect[i]);

    CHECK_THROWS_AS(series_recip(from_ints({0, 1}, 3)), std::domain_error);
}

TEST_CASE("series_sqrt") {
    Series one = Series::constant(Rational(1), 5);
    Series r = series_sqrt(one);
    CHECK(r[0] == 1);
    for (std::size_t i = 1; i <= 5; ++i) CHECK(r[i] == 0);

    // sqrt(1-4z) = 1, -2, -2, -4, -10
    Series s = series_sqrt(Series::one_plus(Rational(-4), 1, 4));
    long expect[] = {1, -2, -2, -4, -10};
    for (std::size_t i = 0; i <= 4; ++i) CHECK(s[i] == expect[i]);

    // sqrt((1+z)^2) = 1+z
    Series sq = series_sqrt(from_ints({1, 2, 1}, 6));
    CHECK(sq[0] == 1);
    CHECK(sq[1] == 1);
    for (std::size_t i = 2; i <= 6; ++i) CHECK(sq[i] == 0);

    CHECK_THROWS_AS(series_sqrt(from_ints({2, 1}, 3)), std::domain_error);
}

TEST_CASE("series_pow_int") {
    // (1-z)^{-2} = 1,2,3,4,...
    Series p = series_pow_int(from_ints({1, -1}, 6), -2);
    for (std::size_t i = 0; i <= 6; ++i) CHECK(p[i] == Rational(static_cast<long>(i) + 1));

    Series cube = series_pow_int(from_ints({1, 1}, 5), 3);
    long expect[] = {1, 3, 3, 1, 0, 0};
    for (std::size_t i = 0; i <= 5; ++i) CHECK(cube[i] == expect[i]);

    // [z^4] (z C)^2 = 5
    Series zc(8);
    Series c = catalan_series(8);
    for (std::size_t i = 1; i <= 8; ++i) zc[i] = c[i - 1];
    CHECK(series_pow_int(zc, 2)[4] == 5);

    CHECK_THROWS_AS(series_pow_int(from_ints({0, 1}, 3), -1), std::domain_error);
}

TEST_CASE("series_hadamard") {
    Series c = catalan_series(4);
    Series had = series_hadamard(c, c);
    long expect[] = {1, 1, 4, 25, 196};
    for (std::size_t i = 0; i <= 4; ++i) CHECK(had[i] == expect[i]);

    Series a = from_ints({3, -1, 7}, 2);
    Series ones = geometric(2);
    Series h = series_hadamard(a, ones);
    for (std::size_t i = 0; i <= 2; ++i) CHECK(h[i] == a[i]);

    // Catalan (.) Motzkin at n = 3: 5 * 4 = 20
    Series mz = motzkin_series(4);
    CHECK(series_hadamard(c, mz)[3] == 20);
}

TEST_CASE("catalan and motzkin series") {
    Series c = catalan_series(6);
    long cex[] = {1, 1, 2, 5, 14, 42, 132};
    for (std::size_t i = 0; i <= 6; ++i) CHECK(c[i] == cex[i]);

    // defining equation C = 1 + z C^2 up to the order
    Series c2 = series_mul(c, c);
    CHECK(c[0] == 1);
    for (std::size_t i = 1; i <= 6; ++i) CHECK(c[i] == c2[i - 1]);

    Series m = motzkin_series(6);
    long mex[] = {1, 1, 2, 4, 9, 21, 51};
    for (std::size_t i = 0; i <= 6; ++i) CHECK(m[i] == mex[i]);
}

TEST_CASE("recip and sqrt roundtrip on random series") {
    std::mt19937 rng(20240901);
    for (int trial = 0; trial < 20; ++trial) {
        Series a = random_series(rng, 12, false);
        if (a[0] == 0) a[0] = 1;
        Series prod = series_mul(a, series_recip(a));
        CHECK(prod[0] == 1);
        for (std::size_t i = 1; i <= 12; ++i) CHECK(prod[i] == 0);

        Series u = random_series(rng, 12, true);
        Series s = series_sqrt(u);
        Series ss = series_mul(s, s);
        for (std::size_t i = 0; i <= 12; ++i) CHECK(ss[i] == u[i]);
    }
}

TEST_CASE("binomial identity: C^l / sqrt(1-4z)") {
    const std::size_t N = 100;
    Series c = catalan_series(N);
    Series invsqrt = series_recip(series_sqrt(Series::one_plus(Rational(-4), 1, N)));
    Series cl = Series::constant(Rational(1), N);
    for (long l = 0; l <= 8; ++l) {
        Series s = series_mul(cl, invsqrt);
        for (std::size_t n = 0; n <= N; n += (l < 2 ? 1 : 7)) {
            Int expect = binomial(static_cast<unsigned long>(2 * n + l), static_cast<unsigned long>(n));
            CHECK(s[n] == Rational(expect));
        }
        cl = series_mul(cl, c);
    }
}
