// The model catalog: identifiers, composition-scheme constants, closed-form
// inner-function evaluators, and exact f_{n,k} builders for each family.
//
// Size-index conventions (the row index n of every table):
//   dyck-excursion, dyck-bridge   n = semilength (object has 2n steps)
//   motzkin-excursion/-bridge     n = length
//   weighted-motzkin              n = length (entries are total weights)
//   perm-fp-132/213/321           n = permutation length
//   two-watermelon                n = walk length; contacts exclude the start
//   wall-watermelon-m             n = semilength (2n steps per walker);
//                                 contacts include the starting point, so the
//                                 statistic is >= 2 for n >= 1 and there is no
//                                 n = 0 row
//   coloured-walk-m               n = length
//   qp-(diagonal|diabolo|king)-(x|y)  n = walk length; diagonal and diabolo
//                                 have empty odd rows
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgibbs/bivariate_table.hpp"
#include "qgibbs/rational.hpp"
#include "qgibbs/series.hpp"

namespace qgibbs {

enum class ModelKind {
    DyckExcursion,
    DyckBridge,
    MotzkinExcursion,
    MotzkinBridge,
    WeightedMotzkin,
    PermFixedPoints,
    TwoWatermelon,
    WallWatermelon,
    ColouredWalk,
    QuarterPlane,
};

enum class QpKind { Diagonal, Diabolo, King };
enum class Axis { X, Y };

struct ModelId {
    ModelKind kind = ModelKind::DyckExcursion;
    int m = 1;           // walkers (wall-watermelon) or colours (coloured walk)
    int pattern = 321;   // 132, 213 or 321
    Rational p_down{1}, p_flat{1}, p_up{1};  // weighted Motzkin step weights
    QpKind qp = QpKind::Diagonal;
    Axis axis = Axis::X;

    std::string name() const;
    static ModelId parse(const std::string& spec);

    static ModelId dyck_excursion() { return {}; }
    static ModelId dyck_bridge() { return {ModelKind::DyckBridge}; }
    static ModelId motzkin_excursion() { return {ModelKind::MotzkinExcursion}; }
    static ModelId motzkin_bridge() { return {ModelKind::MotzkinBridge}; }
    static ModelId weighted_motzkin(const Rational& pd, const Rational& pf, const Rational& pu) {
        ModelId id{ModelKind::WeightedMotzkin};
        id.p_down = pd;
        id.p_flat = pf;
        id.p_up = pu;
        return id;
    }
    static ModelId perm_fp(int pattern) {
        ModelId id{ModelKind::PermFixedPoints};
        id.pattern = pattern;
        return id;
    }
    static ModelId two_watermelon() { return {ModelKind::TwoWatermelon}; }
    static ModelId wall_watermelon(int m) {
        ModelId id{ModelKind::WallWatermelon};
        id.m = m;
        return id;
    }
    static ModelId coloured_walk(int m) {
        ModelId id{ModelKind::ColouredWalk};
        id.m = m;
        return id;
    }
    static ModelId quarter_plane(QpKind qp, Axis axis) {
        ModelId id{ModelKind::QuarterPlane};
        id.qp = qp;
        id.axis = axis;
        return id;
    }
};

// Singular data of the composition scheme F = M(z) * G(q H(z)) with
// G(w) = (1-w)^{-outer_m}, in the model's row variable.
struct SchemeConstants {
    double rho_G = 1.0;
    double lambda_G = -1.0;
    double c_G = 1.0;
    int outer_m = 1;

    double rho_H = 0.0;
    double lambda_H = 0.5;
    double tau_H = 0.0;
    double c_H = 0.0;
    bool tau_H_rational = true;
    Rational tau_H_exact{0};

    bool q_c_rational = true;
    Rational q_c{0};
    // When q_c is irrational it equals (p0 + 2 s)/(p0 + s) with s = sqrt(surd_w);
    // exact comparisons go through this representation.
    Rational surd_p0{0}, surd_w{0};

    bool has_prefactor_M = false;
    double lambda_M = 0.0;
    double c_M = 0.0;
    bool prefactor_parity_pair = false;  // conjugate singularity at -rho (even H)

    int size_unit = 1;
    int statistic_offset = 0;
    int scheme_shift = 0;
    int negbin_r = 2;
    int boltzmann_shift = 1;

    double q_c_value() const;
    std::string q_c_string() const;
};

SchemeConstants scheme_constants(const ModelId& id);

// Exact sign of q - q_c: -1, 0, +1. Exact also for irrational q_c
// (quadratic-surd comparison).
int compare_q_to_qc(const ModelId& id, const Rational& q);

// Closed-form evaluation of the inner function H and its first two
// derivatives on (0, rho_H), in the row variable.
double h_eval(const ModelId& id, double x, int derivative_order);

// Prefactor M(z) of the extended schemes, evaluated at |z| < rho_H
// (wall-watermelon: z/sqrt(1-4z); coloured walk: sqrt((1+2z)/(1-2z))).
double prefactor_eval(const ModelId& id, double z);

// Full table of exact counts via the generating-function construction
// f_{n,k} = binom(k+outer_m-1, k) * [z^n] (M(z) H(z)^k), with the per-model
// extraction shifts. Cost grows cubically; guarded by `limit`.
BivariateTable coefficient_table(const ModelId& id, long max_n, long limit = 800);

// Single exact row by closed form or scatter recurrence; fast enough for
// n in the thousands. Not available for perm-fp above the series fallback
// (moment diagnostics for that model use the algebraic extractor instead).
Row exact_row(const ModelId& id, long n);

// Wall-contact q-polynomial of the m-watermelon with wall, including the
// product-formula prefactor: coefficients of q^2..q^{n+1}.
std::vector<Rational> watermelon_partition_formula(int m, long n);

// The same coefficients via series extraction from
// q^2 z (1-4z)^{-1/2} (1-q z C(z))^{-2m}, for cross-checking.
std::vector<Rational> watermelon_row_via_series(int m, long n);

// (n-1)! prod (2i+1)! prod (2n+2i)! / prod (n+i)!
Rational watermelon_prefactor(int m, long n);

// Marked/unmarked directed factors of a quarter-plane model and the row
// index each factor uses at walk length n.
struct QpFactors {
    ModelId marked;    // carries the contact statistic
    ModelId unmarked;  // cofactor, counted at q = 1
    long marked_index(long n) const;
    long unmarked_index(long n) const;
    bool row_nonempty(long n) const;
};
QpFactors qp_factors(const ModelId& id);

// Representative catalog instances (used by tests and `models`).
std::vector<ModelId> catalog_models();

// Exact integer helpers shared with the oracle and diagnostics.
std::vector<Int> catalan_numbers(long upto);
std::vector<Int> motzkin_numbers(long upto);
Int catalan_number(long n);
Int motzkin_number(long n);

}  // namespace qgibbs
