#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qgibbs/catalan_algebra.hpp"
#include "qgibbs/phase.hpp"

using namespace qgibbs;

TEST_CASE("classification is exact") {
    CHECK(classify(ModelId::dyck_excursion(), Rational(1)) == Regime::Subcritical);
    CHECK(classify(ModelId::dyck_excursion(), Rational(2)) == Regime::Critical);
    CHECK(classify(ModelId::dyck_excursion(), Rational(3)) == Regime::Supercritical);
    CHECK(classify(ModelId::motzkin_excursion(), Rational(3, 2)) == Regime::Critical);
    CHECK_THROWS_AS(classify(ModelId::dyck_excursion(), Rational(0)), std::domain_error);

    // exact q_c for every catalog model, and switching at q_c +- 1/1000
    for (const ModelId& id : catalog_models()) {
        SchemeConstants sc = scheme_constants(id);
        if (!sc.q_c_rational) continue;
        CHECK(classify(id, sc.q_c) == Regime::Critical);
        CHECK(classify(id, sc.q_c - Rational(1, 1000)) == Regime::Subcritical);
        CHECK(classify(id, sc.q_c + Rational(1, 1000)) == Regime::Supercritical);
    }
}

TEST_CASE("solve_rho against closed forms") {
    // Dyck (semilength variable): q H(rho) = 1 gives rho = (q-1)/q^2
    for (const char* qs : {"5/2", "3", "4", "7"}) {
        Rational q = parse_rational(qs);
        double qd = to_double(q);
        double rho = solve_rho(ModelId::dyck_excursion(), q);
        CHECK(rho == doctest::Approx((qd - 1) / (qd * qd)).epsilon(1e-13));
        CHECK(std::fabs(qd * h_eval(ModelId::dyck_excursion(), rho, 0) - 1.0) <= 1e-12);
    }
    // continuity toward rho_H as q -> q_c+
    CHECK(solve_rho(ModelId::dyck_excursion(), parse_rational("2.0001")) ==
          doctest::Approx(0.25).epsilon(1e-3));

    // coloured walks: q(1 - sqrt(1-4 rho^2)) = 1 gives rho = sqrt(2q-1)/(2q)
    for (const char* qs : {"3/2", "2", "4"}) {
        Rational q = parse_rational(qs);
        double qd = to_double(q);
        double rho = solve_rho(ModelId::coloured_walk(2), q);
        CHECK(rho == doctest::Approx(std::sqrt(2 * qd - 1) / (2 * qd)).epsilon(1e-13));
    }

    // residual small across models and a q grid above q_c
    for (const ModelId& id : catalog_models()) {
        SchemeConstants sc = scheme_constants(id);
        for (int i = 1; i <= 4; ++i) {
            Rational q = parse_rational(std::to_string(sc.q_c_value() + 0.5 * i));
            double rho = solve_rho(id, q);
            CHECK(rho > 0);
            CHECK(rho < sc.rho_H);
        }
    }
    CHECK_THROWS_AS(solve_rho(ModelId::dyck_excursion(), Rational(2)), std::domain_error);
}

TEST_CASE("supercritical constants") {
    // Dyck q=4: rho = 3/16, H' = 2 -> mean 2/3 per row (semilength), 1/3 per step
    SupercriticalConstants c = supercritical_constants(ModelId::dyck_excursion(), Rational(4));
    CHECK(c.rho_row == doctest::Approx(3.0 / 16.0).epsilon(1e-13));
    CHECK(c.mean_per_row == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(c.variance_per_row == doctest::Approx(4.0 / 9.0).epsilon(1e-11));

    // positivity on a grid above q_c for every model
    for (const ModelId& id : catalog_models()) {
        double qc = scheme_constants(id).q_c_value();
        for (int i = 0; i < 10; ++i) {
            Rational q = parse_rational(std::to_string(qc + 0.1 + 0.5 * i));
            SupercriticalConstants sc = supercritical_constants(id, q);
            CHECK(sc.variance_per_row > 0);
        }
    }
}

TEST_CASE("limit laws per regime") {
    auto [nb, snb] = limit_law_for(ModelId::perm_fp(321), Rational(1));
    CHECK(nb.kind == LawDescriptor::Kind::NegBin);
    CHECK(nb.r == 2);
    CHECK(nb.p == doctest::Approx(2.0 / 3.0));
    CHECK(snb.shift_const == doctest::Approx(0.0));  // the law applies to X_n itself

    auto [dy, sdy] = limit_law_for(ModelId::dyck_excursion(), Rational(1));
    CHECK(dy.r == 2);
    CHECK(dy.p == doctest::Approx(0.5));
    CHECK(sdy.shift_const == doctest::Approx(1.0));  // X_n - 1

    auto [ray, sray] = limit_law_for(ModelId::dyck_excursion(), Rational(2));
    CHECK(ray.kind == LawDescriptor::Kind::Rayleigh);
    CHECK(ray.sigma == doctest::Approx(std::sqrt(2.0)));
    CHECK(sray.scale_const == doctest::Approx(1.0));  // -c_H/tau_H = 1
    CHECK(sray.scale_exp == doctest::Approx(0.5));

    auto [chi, schi] = limit_law_for(ModelId::wall_watermelon(2), Rational(2));
    CHECK(chi.kind == LawDescriptor::Kind::Chi);
    CHECK(chi.r == 4);
    CHECK(schi.scale_const == doctest::Approx(1.0));

    auto [chic, schic] = limit_law_for(ModelId::coloured_walk(3), Rational(1));
    CHECK(chic.kind == LawDescriptor::Kind::Chi);
    CHECK(chic.r == 3);

    auto [gauss, sg] = limit_law_for(ModelId::dyck_excursion(), Rational(4));
    CHECK(gauss.kind == LawDescriptor::Kind::Gaussian);
    CHECK(sg.shift_per_n == doctest::Approx(2.0 / 3.0));

    // wall-watermelon subcritical: NegBin(2m, 1-q/2) on X - 2
    auto [wnb, swnb] = limit_law_for(ModelId::wall_watermelon(2), Rational(1));
    CHECK(wnb.r == 4);
    CHECK(wnb.p == doctest::Approx(0.5));
    CHECK(swnb.shift_const == doctest::Approx(2.0));

    // coloured subcritical: NegBin(m, 1-q) on X itself
    auto [cnb, scnb] = limit_law_for(ModelId::coloured_walk(2), Rational(1, 2));
    CHECK(cnb.r == 2);
    CHECK(cnb.p == doctest::Approx(0.5));
    CHECK(scnb.shift_const == doctest::Approx(0.0));
}

TEST_CASE("predicted mean formulas") {
    // Dyck q=1: 1 + 2*(1/2)/(1/2) = 3
    CHECK(predicted_mean(ModelId::dyck_excursion(), Rational(1), 100000) == doctest::Approx(3.0));
    // Dyck q=2: sqrt(pi) sqrt(n)
    long n = 40000;
    CHECK(predicted_mean(ModelId::dyck_excursion(), Rational(2), n) ==
          doctest::Approx(std::sqrt(M_PI * n)).epsilon(1e-12));
    // Motzkin q=3/2: (2/sqrt 3) sqrt(pi n)
    CHECK(predicted_mean(ModelId::motzkin_excursion(), Rational(3, 2), n) ==
          doctest::Approx(2.0 / std::sqrt(3.0) * std::sqrt(M_PI * n)).epsilon(1e-12));
    // supercritical Dyck q=4: 2n/3 per row
    CHECK(predicted_mean(ModelId::dyck_excursion(), Rational(4), n) ==
          doctest::Approx(2.0 * n / 3.0).epsilon(1e-10));
}

TEST_CASE("predictions track exact values at moderate n") {
    // subcritical Dyck at q=1: f_n = Catalan
    long n = 320;
    double pred = predicted_partition_log2(ModelId::dyck_excursion(), Rational(1), n);
    double exact = log2_rational(Rational(catalan_number(n)));
    CHECK(std::fabs(exact - pred) < 0.02);  // ratio within ~1.5%

    // critical Dyck at q=2: f_n(2) = binom(2n, n)
    Row row = exact_row(ModelId::dyck_excursion(), n);
    Rational f2 = partition_function(row, Rational(2));
    CHECK(f2 == Rational(binomial(2 * n, n)));
    double pred2 = predicted_partition_log2(ModelId::dyck_excursion(), Rational(2), n);
    CHECK(std::fabs(log2_rational(f2) - pred2) < 0.02);

    // supercritical Dyck at q=4
    Rational f4 = partition_function(row, Rational(4));
    double pred4 = predicted_partition_log2(ModelId::dyck_excursion(), Rational(4), n);
    CHECK(std::fabs(log2_rational(f4) - pred4) < 0.02);

    // extended scheme: wall watermelon m=2 in all three regimes
    for (const char* qs : {"1", "2", "3"}) {
        Rational q = parse_rational(qs);
        Row wr = exact_row(ModelId::wall_watermelon(2), n);
        Rational f = partition_function(wr, q);
        double p = predicted_partition_log2(ModelId::wall_watermelon(2), q, n);
        CHECK(std::fabs(log2_rational(f) - p) < 0.1);
    }

    // coloured walks m=2, including the supercritical parity pair
    for (const char* qs : {"1/2", "1", "2"}) {
        Rational q = parse_rational(qs);
        Row cr = exact_row(ModelId::coloured_walk(2), n);
        Rational f = partition_function(cr, q);
        double p = predicted_partition_log2(ModelId::coloured_walk(2), q, n);
        CHECK(std::fabs(log2_rational(f) - p) < 0.1);
    }

    // perm-fp via the algebraic extractor route
    for (const char* qs : {"1", "3", "5"}) {
        Rational q = parse_rational(qs);
        Rational f = perm_fixed_point_sums(q, n, 0)[0];
        double p = predicted_partition_log2(ModelId::perm_fp(321), q, n);
        CHECK(std::fabs(log2_rational(f) - p) < 0.05);
    }
}

TEST_CASE("supercritical constants match the log-partition derivative") {
    // d log f_n / d log q = E(X_n(q)); central difference at q = 3, n = 2000
    long n = 2000;
    Row row = exact_row(ModelId::motzkin_excursion(), n);
    Rational h(1, 1000), q(3);
    double l1 = log2_rational(partition_function(row, q + h));
    double l0 = log2_rational(partition_function(row, q - h));
    double dlogq = std::log(to_double((q + h) / (q - h)));
    double fd_mean = (l1 - l0) * std::log(2.0) / dlogq / n;
    SupercriticalConstants sc = supercritical_constants(ModelId::motzkin_excursion(), q);
    CHECK(std::fabs(fd_mean - sc.mean_per_row) / sc.mean_per_row < 0.01);
}

TEST_CASE("prediction functional form: n against 2n") {
    // f(2n)/f(n) = rho^{-n} 2^{-lambda-1} n-power structure, checked in log2
    ModelId id = ModelId::dyck_excursion();
    Rational q(4);
    long n = 500;
    double rho = solve_rho(id, q);
    double diff = predicted_partition_log2(id, q, 2 * n) - predicted_partition_log2(id, q, n);
    double expect = -n * std::log2(rho) + (-scheme_constants(id).lambda_G - 1.0);
    CHECK(diff == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("tv and ks distances") {
    std::map<long, double> p{{0, 0.5}, {1, 0.5}};
    CHECK(tv_distance(p, p) == doctest::Approx(0.0));
    std::map<long, double> r{{2, 1.0}};
    CHECK(tv_distance(p, r) == doctest::Approx(1.0));

    // Dyck n=50 q=1 shifted by 1 vs NegBin(2, 1/2): small but positive
    BivariateTable dy = coefficient_table(ModelId::dyck_excursion(), 50);
    GibbsDistribution d = gibbs_pmf(dy, 50, Rational(1));
    double tv = tv_distance(pmf_as_doubles(d, 1), negbin_pmf_map(LawDescriptor::negbin(2, 0.5), 400));
    CHECK(tv > 0.0);
    CHECK(tv < 0.05);

    // KS: Dyck critical vs Rayleigh(sqrt 2) shrinks from n=100 to n=400
    auto [law, scaling] = limit_law_for(ModelId::dyck_excursion(), Rational(2));
    GibbsDistribution d100 = gibbs_pmf(exact_row(ModelId::dyck_excursion(), 100), "dyck", 100, Rational(2));
    GibbsDistribution d400 = gibbs_pmf(exact_row(ModelId::dyck_excursion(), 400), "dyck", 400, Rational(2));
    double k100 = ks_distance(d100, scaling, law);
    double k400 = ks_distance(d400, scaling, law);
    CHECK(k100 > 0.0);
    CHECK(k400 < k100);

    // degenerate comparison: atom mass vs a continuous law stays below 1
    GibbsDistribution deg = gibbs_pmf(exact_row(ModelId::dyck_excursion(), 1), "dyck", 1, Rational(1));
    ScalingSpec identity;
    double kd = ks_distance(deg, identity, LawDescriptor::gaussian(1.0, 1e-9));
    CHECK(kd <= 1.0);
    CHECK(kd >= 0.5 - 1e-9);
}

TEST_CASE("regime report") {
    RegimeReport rep = analyze(ModelId::dyck_excursion(), Rational(4));
    CHECK(rep.regime == Regime::Supercritical);
    CHECK(rep.q_c == "2");
    REQUIRE(rep.rho_steps.has_value());
    CHECK(*rep.rho_steps == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
    CHECK(*rep.mean_constant_per_step == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    RegimeReport sub = analyze(ModelId::perm_fp(321), Rational(1));
    CHECK(sub.regime == Regime::Subcritical);
    CHECK(sub.q_c == "3");
    CHECK(sub.negbin_p_exact == "2/3");

    RegimeReport crit = analyze(ModelId::wall_watermelon(2), Rational(2));
    CHECK(crit.regime == Regime::Critical);
    CHECK(!crit.notes.empty());
}
