#include "qgibbs/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace qgibbs {

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Subcritical: return "subcritical";
        case Regime::Critical: return "critical";
        case Regime::Supercritical: return "supercritical";
    }
    return "?";
}

Regime classify(const ModelId& id, const Rational& q) {
    if (q <= 0) throw std::domain_error("classify: q must be > 0");
    int c = compare_q_to_qc(id, q);
    return c < 0 ? Regime::Subcritical : c == 0 ? Regime::Critical : Regime::Supercritical;
}

double solve_rho(const ModelId& id, const Rational& q) {
    if (id.kind == ModelKind::QuarterPlane) return solve_rho(qp_factors(id).marked, q);
    if (compare_q_to_qc(id, q) <= 0) throw std::domain_error("solve_rho: q must be > q_c");
    SchemeConstants sc = scheme_constants(id);
    double qd = to_double(q);
    auto g = [&](double x) { return qd * h_eval(id, x, 0) - sc.rho_G; };
    double lo = sc.rho_H * 1e-12, hi = sc.rho_H * (1.0 - 1e-15);
    // g(lo) < 0 < g(hi) since H increases from 0 to tau_H and q tau_H > rho_G
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (g(mid) < 0 ? lo : hi) = mid;
    }
    double rho = 0.5 * (lo + hi);
    double resid = std::fabs(qd * h_eval(id, rho, 0) - sc.rho_G);
    if (!(resid <= 1e-12))
        throw std::runtime_error("solve_rho: residual " + std::to_string(resid) + " exceeds 1e-12");
    return rho;
}

SupercriticalConstants supercritical_constants(const ModelId& id, const Rational& q) {
    if (id.kind == ModelKind::QuarterPlane) {
        QpFactors f = qp_factors(id);
        SupercriticalConstants inner = supercritical_constants(f.marked, q);
        int su = scheme_constants(f.marked).size_unit;
        return {inner.rho_row, inner.mean_per_row / su, inner.variance_per_row / su};
    }
    SchemeConstants sc = scheme_constants(id);
    double qd = to_double(q);
    double rho = solve_rho(id, q);
    double h1 = h_eval(id, rho, 1), h2 = h_eval(id, rho, 2);
    double a = sc.rho_G / (qd * rho * h1);
    double var = a * a - a + sc.rho_G * sc.rho_G * h2 / (qd * qd * rho * h1 * h1 * h1);
    if (!(var > 0))
        throw std::runtime_error("supercritical_constants: variance constant is not positive");
    return {rho, a, var};
}

double ScalingSpec::apply(double x, long n) const {
    double denom = scale_const * std::pow(static_cast<double>(n), scale_exp);
    return (x - shift_const - shift_per_n * static_cast<double>(n)) / denom;
}

std::pair<LawDescriptor, ScalingSpec> limit_law_for(const ModelId& id, const Rational& q) {
    SchemeConstants sc = scheme_constants(id);
    Regime regime = classify(id, q);
    switch (regime) {
        case Regime::Subcritical: {
            double p = 1.0 - to_double(q) * sc.tau_H;
            LawDescriptor law = LawDescriptor::negbin(sc.negbin_r, p);
            ScalingSpec s;
            s.shift_const = sc.boltzmann_shift + sc.scheme_shift;
            return {law, s};
        }
        case Regime::Critical: {
            ScalingSpec s;
            s.scale_exp = sc.lambda_H;
            if (id.kind == ModelKind::WallWatermelon) {
                s.scale_const = 1.0;
                return {LawDescriptor::chi(2 * id.m), s};
            }
            if (id.kind == ModelKind::ColouredWalk) {
                s.scale_const = 1.0;
                return {LawDescriptor::chi(id.m), s};
            }
            // plain sequence schemes: (-c_H/tau_H) X_n / n^{1/2} -> Rayleigh(sqrt 2)
            double scale = sc.tau_H / (-sc.c_H);
            if (id.kind == ModelKind::QuarterPlane) {
                // the scheme's row variable advances once every size_unit steps
                // of the quarter-plane length index
                scale /= std::sqrt(static_cast<double>(sc.size_unit));
            }
            s.scale_const = scale;
            return {LawDescriptor::rayleigh(std::sqrt(2.0)), s};
        }
        case Regime::Supercritical: {
            SupercriticalConstants c = supercritical_constants(id, q);
            ScalingSpec s;
            s.shift_per_n = c.mean_per_row;
            s.scale_const = std::sqrt(c.variance_per_row);
            s.scale_exp = 0.5;
            return {LawDescriptor::gaussian(0.0, 1.0), s};
        }
    }
    throw std::logic_error("limit_law_for: unhandled regime");
}

namespace {

// log2 of the sub/critical coefficient prediction for the pure scheme
// (1 - qH)^{-mm}; row index n. Supercritical needs solve_rho and is handled
// by the caller.
double plain_partition_log2(const SchemeConstants& sc, Regime regime, double qd, long n) {
    double mm = static_cast<double>(sc.outer_m);
    double ln = std::log2(static_cast<double>(n));
    switch (regime) {
        case Regime::Subcritical: {
            double gp = mm * std::pow(1.0 - qd * sc.tau_H, -mm - 1.0);
            double amp = sc.c_H * qd * gp / gamma_real(-sc.lambda_H);
            return std::log2(amp) - n * std::log2(sc.rho_H) + (-sc.lambda_H - 1.0) * ln;
        }
        case Regime::Critical: {
            double amp = sc.c_G * std::pow(-sc.c_H / sc.tau_H, sc.lambda_G) /
                         gamma_real(-sc.lambda_H * sc.lambda_G);
            return std::log2(amp) - n * std::log2(sc.rho_H) + (-sc.lambda_H * sc.lambda_G - 1.0) * ln;
        }
        default:
            throw std::logic_error("plain_partition_log2: supercritical handled by caller");
    }
}

}  // namespace

double predicted_partition_log2(const ModelId& id, const Rational& q, long n) {
    if (n < 1) throw std::domain_error("predicted_partition_log2: n must be >= 1");
    if (id.kind == ModelKind::QuarterPlane) {
        QpFactors f = qp_factors(id);
        return predicted_partition_log2(f.marked, q, f.marked_index(n)) +
               predicted_partition_log2(f.unmarked, Rational(1), f.unmarked_index(n));
    }
    if (id.kind == ModelKind::PermFixedPoints) {
        // f_n(q) = (1/q) [z^{n+1}] (1 - qH)^{-1}, so shift the row index
        SchemeConstants sc = scheme_constants(id);
        Regime regime = classify(id, q);
        double qd = to_double(q);
        long np = n + 1;
        double base;
        if (regime == Regime::Supercritical) {
            double rho = solve_rho(id, q);
            double amp = sc.c_G * std::pow(qd * rho * h_eval(id, rho, 1) / sc.rho_G, sc.lambda_G) /
                         gamma_real(-sc.lambda_G);
            base = std::log2(amp) - np * std::log2(rho) + (-sc.lambda_G - 1.0) * std::log2(double(np));
        } else {
            base = plain_partition_log2(sc, regime, qd, np);
        }
        return base - std::log2(qd);
    }

    SchemeConstants sc = scheme_constants(id);
    Regime regime = classify(id, q);
    double qd = to_double(q);
    double ln = std::log2(static_cast<double>(n));

    if (!sc.has_prefactor_M) {
        if (regime == Regime::Supercritical) {
            double rho = solve_rho(id, q);
            double amp = sc.c_G * std::pow(qd * rho * h_eval(id, rho, 1) / sc.rho_G, sc.lambda_G) /
                         gamma_real(-sc.lambda_G);
            return std::log2(amp) - n * std::log2(rho) + (-sc.lambda_G - 1.0) * ln;
        }
        return plain_partition_log2(sc, regime, qd, n);
    }

    // extended schemes F = q^{ss} M(z) (1 - qH)^{-mm}
    double ss = static_cast<double>(sc.scheme_shift);
    double mm = static_cast<double>(sc.outer_m);
    double log2_out;
    switch (regime) {
        case Regime::Subcritical: {
            double g = std::pow(1.0 - qd * sc.tau_H, -mm);
            double amp = g * sc.c_M / gamma_real(-sc.lambda_M);
            log2_out = std::log2(amp) - n * std::log2(sc.rho_H) + (-sc.lambda_M - 1.0) * ln;
            break;
        }
        case Regime::Critical: {
            double merged = sc.lambda_M + sc.lambda_G * sc.lambda_H;
            double amp = sc.c_M * sc.c_G * std::pow(qd * (-sc.c_H) / sc.rho_G, sc.lambda_G) /
                         gamma_real(-merged);
            log2_out = std::log2(amp) - n * std::log2(sc.rho_H) + (-merged - 1.0) * ln;
            break;
        }
        case Regime::Supercritical: {
            double rho = solve_rho(id, q);
            double mval = prefactor_eval(id, rho);
            if (sc.prefactor_parity_pair) {
                double msec = prefactor_eval(id, -rho);
                mval += (n % 2 == 0 ? msec : -msec);
            }
            double amp = mval * sc.c_G * std::pow(qd * rho * h_eval(id, rho, 1) / sc.rho_G, sc.lambda_G) /
                         gamma_real(-sc.lambda_G);
            log2_out = std::log2(amp) - n * std::log2(rho) + (-sc.lambda_G - 1.0) * ln;
            break;
        }
        default:
            throw std::logic_error("predicted_partition_log2: unhandled regime");
    }
    log2_out += ss * std::log2(qd);
    if (id.kind == ModelKind::WallWatermelon)
        log2_out += log2_rational(watermelon_prefactor(id.m, n));
    return log2_out;
}

double predicted_mean(const ModelId& id, const Rational& q, long n) {
    if (id.kind == ModelKind::QuarterPlane) {
        QpFactors f = qp_factors(id);
        return predicted_mean(f.marked, q, f.marked_index(n));
    }
    SchemeConstants sc = scheme_constants(id);
    Regime regime = classify(id, q);
    double qd = to_double(q);
    double p = static_cast<double>(sc.outer_m);
    switch (regime) {
        case Regime::Subcritical: {
            double x = qd * sc.tau_H;
            double kmean;
            if (!sc.has_prefactor_M)
                kmean = 1.0 + (p + 1.0) * x / (1.0 - x);  // Boltzmann law of G'
            else
                kmean = p * x / (1.0 - x);  // Boltzmann law of G (singular prefactor)
            return kmean + sc.scheme_shift;
        }
        case Regime::Critical: {
            double kmean = (p * sc.tau_H / (-sc.c_H)) *
                           gamma_real(sc.lambda_H * p - sc.lambda_M) /
                           gamma_real(sc.lambda_H * (p + 1.0) - sc.lambda_M) *
                           std::pow(static_cast<double>(n), sc.lambda_H);
            return kmean + sc.scheme_shift;
        }
        case Regime::Supercritical: {
            SupercriticalConstants c = supercritical_constants(id, q);
            return c.mean_per_row * static_cast<double>(n) + sc.scheme_shift;
        }
    }
    throw std::logic_error("predicted_mean: unhandled regime");
}

double tv_distance(const std::map<long, double>& p, const std::map<long, double>& r) {
    double acc = 0.0;
    auto it = p.begin();
    auto jt = r.begin();
    while (it != p.end() || jt != r.end()) {
        if (jt == r.end() || (it != p.end() && it->first < jt->first)) {
            acc += std::fabs(it->second);
            ++it;
        } else if (it == p.end() || jt->first < it->first) {
            acc += std::fabs(jt->second);
            ++jt;
        } else {
            acc += std::fabs(it->second - jt->second);
            ++it;
            ++jt;
        }
    }
    return 0.5 * acc;
}

std::map<long, double> pmf_as_doubles(const GibbsDistribution& dist, long shift) {
    std::map<long, double> out;
    for (const auto& [k, w] : dist.weights) {
        Rational p = w / dist.partition;
        out[k - shift] = to_double(p);
    }
    return out;
}

std::map<long, double> negbin_pmf_map(const LawDescriptor& law, long kmax) {
    std::map<long, double> out;
    for (long k = 0; k <= kmax; ++k) out[k] = law_pdf(law, static_cast<double>(k));
    return out;
}

double ks_distance(const GibbsDistribution& dist, const ScalingSpec& scaling, const LawDescriptor& law) {
    double sup = 0.0, cum = 0.0;
    for (const auto& [k, w] : dist.weights) {
        double x = scaling.apply(static_cast<double>(k), dist.n);
        double fl = law_cdf(law, x);
        sup = std::max(sup, std::fabs(cum - fl));  // left limit at the atom
        cum += to_double(Rational(w / dist.partition));
        sup = std::max(sup, std::fabs(cum - fl));
    }
    return sup;
}

RegimeReport analyze(const ModelId& id, const Rational& q) {
    RegimeReport rep;
    rep.model = id.name();
    rep.q = q;
    SchemeConstants sc = scheme_constants(id);
    rep.q_c = sc.q_c_string();
    rep.regime = classify(id, q);
    auto [law, scaling] = limit_law_for(id, q);
    rep.law = law;
    rep.scaling = scaling;
    if (rep.regime == Regime::Subcritical && sc.tau_H_rational) {
        Rational p = 1 - q * sc.tau_H_exact;
        p.canonicalize();
        rep.negbin_p_exact = p.get_str();
    }
    if (rep.regime == Regime::Supercritical) {
        SupercriticalConstants c = supercritical_constants(id, q);
        int su = sc.size_unit;
        // report in the object's natural step variable
        rep.rho_steps = su == 2 ? std::sqrt(c.rho_row) : c.rho_row;
        rep.mean_constant_per_step = c.mean_per_row / su;
        rep.variance_constant_per_step = c.variance_per_row / su;
        if (id.kind == ModelKind::QuarterPlane) {
            // constants above are already per quarter-plane step
            rep.mean_constant_per_step = c.mean_per_row;
            rep.variance_constant_per_step = c.variance_per_row;
            rep.rho_steps = std::pow(c.rho_row, 1.0 / scheme_constants(qp_factors(id).marked).size_unit);
        }
    }
    if (rep.regime == Regime::Critical &&
        (id.kind == ModelKind::WallWatermelon || id.kind == ModelKind::ColouredWalk)) {
        rep.notes.push_back(
            "critical chi scaling: the exact moment ladder (compare subcommand / acceptance "
            "harness) identifies which rescaling of the chi law X_n/sqrt(n) actually attains; "
            "for wall watermelons it matches sqrt(2)*chi(2m), not chi(2m) itself");
    }
    return rep;
}

}  // namespace qgibbs
