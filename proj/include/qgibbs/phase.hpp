// Regime classification, asymptotic predictions, supercritical constants,
// limit-law selection with scaling, and convergence diagnostics.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgibbs/gibbs.hpp"
#include "qgibbs/laws.hpp"
#include "qgibbs/models.hpp"

namespace qgibbs {

enum class Regime { Subcritical, Critical, Supercritical };

std::string regime_name(Regime r);

// Exact comparison of q against q_c (quadratic-surd arithmetic where q_c is
// irrational).
Regime classify(const ModelId& id, const Rational& q);

// Unique root of q H(rho) = rho_G in (0, rho_H), row variable. Bisection to
// 1e-14 relative; the residual |q H(rho) - rho_G| is checked against 1e-12.
double solve_rho(const ModelId& id, const Rational& q);

struct SupercriticalConstants {
    double rho_row;            // singularity in the row variable
    double mean_per_row;       // E X_n ~ mean_per_row * n (n = row index)
    double variance_per_row;   // Var X_n ~ variance_per_row * n
};

// Evaluates the displayed mean/variance constants via solve_rho and the
// closed-form H derivatives; throws if the variance constant fails to be
// positive (it cannot, by the positivity result).
SupercriticalConstants supercritical_constants(const ModelId& id, const Rational& q);

// x -> (x - shift_const - shift_per_n * n) / (scale_const * n^scale_exp)
struct ScalingSpec {
    double shift_const = 0.0;
    double shift_per_n = 0.0;
    double scale_const = 1.0;
    double scale_exp = 0.0;
    double apply(double x, long n) const;
};

// The regime-appropriate limit law and the affine rescaling mapping X_n to
// it. Critical laws of the extended schemes are the chi laws stated for
// them; see RegimeReport::notes for the scaling caveat surfaced by the
// moment harness.
std::pair<LawDescriptor, ScalingSpec> limit_law_for(const ModelId& id, const Rational& q);

// log2 of the first-order prediction of f_n(q) (log scale: the values
// overflow double range long before n = 2000).
double predicted_partition_log2(const ModelId& id, const Rational& q, long n);

// First-order prediction of E(X_n(q)).
double predicted_mean(const ModelId& id, const Rational& q, long n);

// (1/2) sum |p_k - r_k|
double tv_distance(const std::map<long, double>& p, const std::map<long, double>& r);

// sup over atoms of the rescaled empirical cdf vs the law cdf, both one-sided
// limits at each atom.
double ks_distance(const GibbsDistribution& dist, const ScalingSpec& scaling, const LawDescriptor& law);

// pmf of dist shifted by -shift, as doubles
std::map<long, double> pmf_as_doubles(const GibbsDistribution& dist, long shift = 0);
// NegBin pmf on 0..kmax as doubles
std::map<long, double> negbin_pmf_map(const LawDescriptor& law, long kmax);

struct RegimeReport {
    std::string model;
    Rational q;
    std::string q_c;
    Regime regime;
    LawDescriptor law;
    std::string negbin_p_exact;  // exact "num/den" when tau_H is rational
    ScalingSpec scaling;
    // supercritical only; in the model's natural step variable
    std::optional<double> rho_steps;
    std::optional<double> mean_constant_per_step;
    std::optional<double> variance_constant_per_step;
    std::vector<std::string> notes;
};

RegimeReport analyze(const ModelId& id, const Rational& q);

}  // namespace qgibbs
