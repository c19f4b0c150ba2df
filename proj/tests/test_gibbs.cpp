#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qgibbs/gibbs.hpp"
#include "qgibbs/models.hpp"

using namespace qgibbs;

TEST_CASE("partition function examples") {
    BivariateTable dy = coefficient_table(ModelId::dyck_excursion(), 10);
    CHECK(partition_function(dy, 3, Rational(2)) == Rational(20));
    CHECK(partition_function(dy, 3, Rational(1)) == Rational(5));

    BivariateTable ww = coefficient_table(ModelId::wall_watermelon(1), 4);
    CHECK(partition_function(ww, 2, Rational(1)) == Rational(2));

    // q = 1 gives the plain counts for every catalog model
    for (const ModelId& id : catalog_models()) {
        BivariateTable t = coefficient_table(id, 12);
        for (long n : {5L, 12L})
            CHECK(partition_function(t, n, Rational(1)) == row_sum(t.row(n)));
    }

    CHECK_THROWS_AS(partition_function(dy, 3, Rational(0)), std::domain_error);
    CHECK_THROWS_AS(partition_function(dy, 11, Rational(1)), std::domain_error);
}

TEST_CASE("gibbs pmf examples") {
    BivariateTable dy = coefficient_table(ModelId::dyck_excursion(), 10);
    GibbsDistribution d = gibbs_pmf(dy, 3, Rational(2));
    CHECK(d.pmf(1) == Rational(1, 5));
    CHECK(d.pmf(2) == Rational(2, 5));
    CHECK(d.pmf(3) == Rational(2, 5));
    CHECK(d.pmf(0) == Rational(0));

    BivariateTable mz = coefficient_table(ModelId::motzkin_excursion(), 6);
    GibbsDistribution m = gibbs_pmf(mz, 3, Rational(1));
    CHECK(m.pmf(1) == Rational(1, 4));
    CHECK(m.pmf(2) == Rational(1, 2));
    CHECK(m.pmf(3) == Rational(1, 4));

    // empty row -> domain error naming the model
    BivariateTable qd = coefficient_table(ModelId::quarter_plane(QpKind::Diagonal, Axis::X), 6);
    CHECK_THROWS_WITH_AS(gibbs_pmf(qd, 3, Rational(1)),
                         doctest::Contains("qp-diagonal-x"), std::domain_error);
}

TEST_CASE("normalization is exact at n = 200") {
    for (const ModelId& id : {ModelId::dyck_excursion(), ModelId::coloured_walk(2)}) {
        GibbsDistribution d = gibbs_pmf(exact_row(id, 200), id.name(), 200, parse_rational("7/3"));
        Rational total(0);
        for (const auto& [k, w] : d.weights) total += w;
        CHECK(total == d.partition);
        CHECK(gibbs_moment(d, 0) == Rational(1));
    }
}

TEST_CASE("normalization is exact on a q grid") {
    for (const ModelId& id : catalog_models()) {
        BivariateTable t = coefficient_table(id, 30);
        for (const char* qs : {"1/7", "1", "3/2", "2", "7"}) {
            Rational q = parse_rational(qs);
            for (long n : {7L, 30L}) {
                if (t.row(n).empty()) continue;
                GibbsDistribution d = gibbs_pmf(t, n, q);
                Rational total(0);
                for (const auto& [k, w] : d.weights) total += w;
                CHECK(total == d.partition);
                CHECK(gibbs_moment(d, 0) == Rational(1));
            }
        }
    }
}

TEST_CASE("moments") {
    BivariateTable dy = coefficient_table(ModelId::dyck_excursion(), 10);
    GibbsDistribution d2 = gibbs_pmf(dy, 3, Rational(2));
    CHECK(gibbs_moment(d2, 1) == Rational(11, 5));
    GibbsDistribution d1 = gibbs_pmf(dy, 3, Rational(1));
    CHECK(gibbs_moment(d1, 1) == Rational(9, 5));
    CHECK(gibbs_central_moment(d1, 2) ==
          gibbs_moment(d1, 2) - gibbs_moment(d1, 1) * gibbs_moment(d1, 1));
}

TEST_CASE("tilted pgf identity") {
    BivariateTable dy = coefficient_table(ModelId::dyck_excursion(), 10);
    CHECK(tilted_pgf(dy, 3, Rational(2), Rational(3)) == Rational(15));
    CHECK(tilted_pgf(dy, 3, Rational(2), Rational(1)) == Rational(1));

    // identity E(v^X) = p(vq)/p(q) on random rationals, all catalog models
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(1, 12), den(1, 12);
    for (const ModelId& id : catalog_models()) {
        BivariateTable t = coefficient_table(id, 10);
        for (int trial = 0; trial < 10; ++trial) {
            Rational q(num(rng), den(rng)), v(num(rng), den(rng));
            q.canonicalize();
            v.canonicalize();
            long n = t.row(10).empty() ? 9 : 10;
            if (t.row(n).empty()) continue;
            Rational lhs = tilted_pgf(t, n, q, v);
            Rational rhs = partition_function(t, n, q * v) / partition_function(t, n, q);
            rhs.canonicalize();
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("monotone tilting: mean strictly increases in q") {
    for (const ModelId& id : catalog_models()) {
        BivariateTable t = coefficient_table(id, 16);
        long n = t.row(16).empty() ? 15 : 16;
        const Row& row = t.row(n);
        if (row.size() < 2) continue;
        Rational prev(-1);
        for (const char* qs : {"1/2", "1", "2", "4"}) {
            GibbsDistribution d = gibbs_pmf(t, n, parse_rational(qs));
            Rational mean = gibbs_moment(d, 1);
            CHECK(mean > prev);
            prev = mean;
        }
    }
}

TEST_CASE("sampler determinism and exactness") {
    BivariateTable dy = coefficient_table(ModelId::dyck_excursion(), 10);
    GibbsDistribution d = gibbs_pmf(dy, 3, Rational(2));

    CHECK(sample_statistic(d, 42, 0).empty());

    auto a = sample_statistic(d, 42, 1000);
    auto b = sample_statistic(d, 42, 1000);
    CHECK(a == b);
    auto c = sample_statistic(d, 43, 1000);
    CHECK(a != c);

    // degenerate pmf: all draws equal
    BivariateTable ww = coefficient_table(ModelId::wall_watermelon(1), 2);
    GibbsDistribution deg = gibbs_pmf(ww, 1, Rational(5));
    for (long k : sample_statistic(deg, 1, 50)) CHECK(k == 2);

    // empirical frequencies within 4 sigma of {1/5, 2/5, 2/5}
    const std::size_t N = 100000;
    auto draws = sample_statistic(d, 20240901, N);
    std::map<long, std::size_t> freq;
    for (long k : draws) ++freq[k];
    for (auto [k, p] : std::map<long, double>{{1, 0.2}, {2, 0.4}, {3, 0.4}}) {
        double sigma = std::sqrt(p * (1 - p) * N);
        CHECK(std::fabs(static_cast<double>(freq[k]) - p * N) < 4 * sigma);
    }
}
