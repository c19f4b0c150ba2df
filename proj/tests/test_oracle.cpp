#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgibbs/brute.hpp"
#include "qgibbs/models.hpp"

using namespace qgibbs;

namespace {

void check_tables_equal(const BivariateTable& a, const BivariateTable& b, long upto) {
    REQUIRE(a.max_n >= upto);
    REQUIRE(b.max_n >= upto);
    for (long n = 0; n <= upto; ++n) {
        INFO(a.model, " row ", n);
        CHECK(a.row(n) == b.row(n));
    }
}

}  // namespace

TEST_CASE("avoids: pattern membership") {
    // the long 321-avoiding example
    CHECK(avoids({2, 1, 3, 5, 6, 4, 7, 8, 10, 12, 9, 11}, 321));
    CHECK(!avoids({3, 2, 1}, 321));
    CHECK(!avoids({1, 3, 2}, 132));
    CHECK(!avoids({2, 1, 3}, 213));
    // identity avoids every pattern containing a descent
    CHECK(avoids({1, 2, 3, 4, 5}, 321));
    CHECK(avoids({1, 2, 3, 4, 5}, 132));
    CHECK(avoids({1, 2, 3, 4, 5}, 213));
    CHECK_THROWS_AS(avoids({1, 1, 2}, 321), std::domain_error);
    CHECK_THROWS_AS(avoids({1, 2, 3}, 123), std::domain_error);
}

TEST_CASE("vicious_ok and friendly_ok") {
    // two parallel arches at heights 0 and 2
    CHECK(vicious_ok({{0, 1, 0}, {2, 3, 2}}, true));
    // meeting at a point
    CHECK(!vicious_ok({{0, 1, 2}, {2, 1, 2}}, false));
    // single walker: wall constraint alone
    CHECK(vicious_ok({{0, 1, 0}}, true));
    CHECK(!vicious_ok({{0, -1, 0}}, true));
    CHECK(vicious_ok({{0, -1, 0}}, false));

    CHECK(friendly_ok({0, 1, 0}, {0, 1, 0}));   // sharing allowed
    CHECK(friendly_ok({0, 1, 2}, {0, 1, 0}));
    CHECK(!friendly_ok({0, 1, 0}, {0, 1, 2}));  // crossing forbidden
}

TEST_CASE("oracle spot rows checked by hand") {
    BivariateTable dy = brute_table(ModelId::dyck_excursion(), 3);
    CHECK(dy.row(3) == Row{{1, Rational(2)}, {2, Rational(2)}, {3, Rational(1)}});

    BivariateTable pf = brute_table(ModelId::perm_fp(321), 3);
    CHECK(pf.row(3) == Row{{0, Rational(2)}, {1, Rational(2)}, {3, Rational(1)}});

    BivariateTable pf4 = brute_table(ModelId::perm_fp(132), 4);
    CHECK(row_sum(pf4.row(4)) == Rational(14));

    BivariateTable ww = brute_table(ModelId::wall_watermelon(1), 2);
    CHECK(ww.row(2) == Row{{2, Rational(1)}, {3, Rational(1)}});

    BivariateTable cw = brute_table(ModelId::coloured_walk(1), 2);
    CHECK(cw.row(2) == Row{{0, Rational(2)}, {1, Rational(2)}});
}

TEST_CASE("oracle equivalence at quick scale") {
    // full-depth equivalence is the acceptance gate; keep the unit run fast
    struct Case {
        ModelId id;
        long n;
    };
    std::vector<Case> cases = {
        {ModelId::dyck_excursion(), 8},
        {ModelId::dyck_bridge(), 7},
        {ModelId::motzkin_excursion(), 9},
        {ModelId::motzkin_bridge(), 9},
        {ModelId::weighted_motzkin(Rational(1, 2), Rational(3), Rational(2)), 8},
        {ModelId::perm_fp(321), 7},
        {ModelId::perm_fp(132), 7},
        {ModelId::perm_fp(213), 7},
        {ModelId::two_watermelon(), 9},
        {ModelId::wall_watermelon(1), 5},
        {ModelId::wall_watermelon(2), 5},
        {ModelId::coloured_walk(1), 10},
        {ModelId::coloured_walk(2), 9},
        {ModelId::quarter_plane(QpKind::Diagonal, Axis::X), 10},
        {ModelId::quarter_plane(QpKind::Diabolo, Axis::X), 9},
        {ModelId::quarter_plane(QpKind::Diabolo, Axis::Y), 9},
        {ModelId::quarter_plane(QpKind::King, Axis::X), 7},
    };
    for (const auto& c : cases) {
        BivariateTable brute = brute_table(c.id, c.n);
        BivariateTable table = coefficient_table(c.id, c.n);
        check_tables_equal(table, brute, c.n);
    }
}

TEST_CASE("quarter-plane DP oracle agrees with direct generation") {
    for (QpKind kind : {QpKind::Diagonal, QpKind::Diabolo, QpKind::King}) {
        for (Axis axis : {Axis::X, Axis::Y}) {
            ModelId id = ModelId::quarter_plane(kind, axis);
            long n = std::min(brute_limit(id), 9L);
            BivariateTable dfs = brute_table(id, n);
            BivariateTable dp = quarter_plane_dp_table(id, n);
            check_tables_equal(dp, dfs, n);
        }
    }
}

TEST_CASE("two-watermelon oracle counts friendly configurations") {
    BivariateTable tw = brute_table(ModelId::two_watermelon(), 4);
    // lengths 1 and 2 by hand: {1:2}, {1:1, 2:4}
    CHECK(tw.row(1) == Row{{1, Rational(2)}});
    CHECK(tw.row(2) == Row{{1, Rational(1)}, {2, Rational(4)}});
}

TEST_CASE("oracle refuses beyond its limits") {
    CHECK_THROWS_AS(brute_table(ModelId::dyck_excursion(), 40), std::overflow_error);
    CHECK_THROWS_AS(brute_table(ModelId::perm_fp(321), 10), std::overflow_error);
    CHECK_THROWS_AS(brute_table(ModelId::wall_watermelon(4), 2), std::overflow_error);
}
