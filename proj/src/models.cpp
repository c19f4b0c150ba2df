#include "qgibbs/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgibbs {

// ---------------------------------------------------------------------------
// names and parsing

std::string ModelId::name() const {
    switch (kind) {
        case ModelKind::DyckExcursion: return "dyck-excursion";
        case ModelKind::DyckBridge: return "dyck-bridge";
        case ModelKind::MotzkinExcursion: return "motzkin-excursion";
        case ModelKind::MotzkinBridge: return "motzkin-bridge";
        case ModelKind::WeightedMotzkin: {
            std::ostringstream os;
            os << "weighted-motzkin:" << p_down << "," << p_flat << "," << p_up;
            return os.str();
        }
        case ModelKind::PermFixedPoints: return "perm-fp-" + std::to_string(pattern);
        case ModelKind::TwoWatermelon: return "two-watermelon";
        case ModelKind::WallWatermelon: return "wall-watermelon-" + std::to_string(m);
        case ModelKind::ColouredWalk: return "coloured-walk-" + std::to_string(m);
        case ModelKind::QuarterPlane: {
            std::string k = qp == QpKind::Diagonal ? "diagonal" : qp == QpKind::Diabolo ? "diabolo" : "king";
            return "qp-" + k + "-" + (axis == Axis::X ? "x" : "y");
        }
    }
    return "?";
}

ModelId ModelId::parse(const std::string& spec) {
    auto starts = [&](const std::string& p) { return spec.rfind(p, 0) == 0; };
    if (spec == "dyck-excursion") return dyck_excursion();
    if (spec == "dyck-bridge") return dyck_bridge();
    if (spec == "motzkin-excursion") return motzkin_excursion();
    if (spec == "motzkin-bridge") return motzkin_bridge();
    if (spec == "two-watermelon") return two_watermelon();
    if (starts("perm-fp-")) {
        int pat = std::stoi(spec.substr(8));
        if (pat != 132 && pat != 213 && pat != 321)
            throw std::invalid_argument("perm-fp pattern must be 132, 213 or 321");
        return perm_fp(pat);
    }
    if (starts("wall-watermelon-")) {
        int m = std::stoi(spec.substr(16));
        if (m < 1) throw std::invalid_argument("wall-watermelon: m must be >= 1");
        return wall_watermelon(m);
    }
    if (starts("coloured-walk-")) {
        int m = std::stoi(spec.substr(14));
        if (m < 1) throw std::invalid_argument("coloured-walk: m must be >= 1");
        return coloured_walk(m);
    }
    if (starts("weighted-motzkin:")) {
        std::string rest = spec.substr(17);
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (true) {
            auto c = rest.find(',', pos);
            parts.push_back(rest.substr(pos, c == std::string::npos ? c : c - pos));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        if (parts.size() != 3)
            throw std::invalid_argument("weighted-motzkin needs three weights p_down,p_flat,p_up");
        Rational pd = parse_rational(parts[0]), pf = parse_rational(parts[1]), pu = parse_rational(parts[2]);
        if (pd < 0 || pf < 0 || pu < 0 || pd * pu == 0)
            throw std::invalid_argument("weighted-motzkin: weights must be >= 0 with p_down*p_up > 0");
        return weighted_motzkin(pd, pf, pu);
    }
    if (starts("qp-")) {
        std::string rest = spec.substr(3);
        QpKind k;
        std::size_t len;
        if (rest.rfind("diagonal", 0) == 0) {
            k = QpKind::Diagonal;
            len = 8;
        } else if (rest.rfind("diabolo", 0) == 0) {
            k = QpKind::Diabolo;
            len = 7;
        } else if (rest.rfind("king", 0) == 0) {
            k = QpKind::King;
            len = 4;
        } else {
            throw std::invalid_argument("unknown quarter-plane kind in '" + spec + "'");
        }
        std::string ax = rest.substr(len);
        if (ax == "-x") return quarter_plane(k, Axis::X);
        if (ax == "-y") return quarter_plane(k, Axis::Y);
        throw std::invalid_argument("quarter-plane model needs -x or -y axis suffix");
    }
    throw std::invalid_argument("unknown model '" + spec + "'");
}

// ---------------------------------------------------------------------------
// integer sequences

std::vector<Int> catalan_numbers(long upto) {
    std::vector<Int> c(static_cast<std::size_t>(upto) + 1);
    c[0] = 1;
    for (long i = 0; i < upto; ++i) {
        Int t = c[i] * (2 * (2 * i + 1));
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(i + 2));
        c[i + 1] = t;
    }
    return c;
}

std::vector<Int> motzkin_numbers(long upto) {
    std::vector<Int> m(static_cast<std::size_t>(upto) + 1);
    m[0] = 1;
    if (upto >= 1) m[1] = 1;
    for (long n = 2; n <= upto; ++n) {
        Int t = m[n - 1] * (2 * n + 1) + m[n - 2] * (3 * (n - 1));
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(n + 2));
        m[n] = t;
    }
    return m;
}

Int catalan_number(long n) {
    Int t = binomial(static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n));
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(n + 1));
    return t;
}

Int motzkin_number(long n) { return motzkin_numbers(n)[n]; }

// ---------------------------------------------------------------------------
// scheme constants

double SchemeConstants::q_c_value() const {
    if (q_c_rational) return to_double(q_c);
    double p0 = to_double(surd_p0), s = std::sqrt(to_double(surd_w));
    return (p0 + 2 * s) / (p0 + s);
}

std::string SchemeConstants::q_c_string() const {
    if (q_c_rational) return q_c.get_str();
    std::ostringstream os;
    os.precision(17);
    os << q_c_value();
    return os.str();
}

namespace {

// true when r = (a/b)^2 with integer a, b; if so out = a/b
bool rational_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    const Int num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    out = Rational(sn, sd);
    out.canonicalize();
    return true;
}

SchemeConstants plain_half(double rho, double tau, double c_h, const Rational& tau_exact,
                           const Rational& qc, int size_unit) {
    SchemeConstants s;
    s.rho_H = rho;
    s.tau_H = tau;
    s.c_H = c_h;
    s.tau_H_exact = tau_exact;
    s.q_c = qc;
    s.size_unit = size_unit;
    return s;
}

}  // namespace

SchemeConstants scheme_constants(const ModelId& id) {
    switch (id.kind) {
        case ModelKind::DyckExcursion:
            return plain_half(0.25, 0.5, -0.5, Rational(1, 2), Rational(2), 2);
        case ModelKind::DyckBridge:
            return plain_half(0.25, 1.0, -1.0, Rational(1), Rational(1), 2);
        case ModelKind::MotzkinExcursion:
            return plain_half(1.0 / 3.0, 2.0 / 3.0, -1.0 / std::sqrt(3.0), Rational(2, 3), Rational(3, 2), 1);
        case ModelKind::MotzkinBridge:
            return plain_half(1.0 / 3.0, 1.0, -2.0 / std::sqrt(3.0), Rational(1), Rational(1), 1);
        case ModelKind::PermFixedPoints: {
            SchemeConstants s = plain_half(0.25, 1.0 / 3.0, -2.0 / 9.0, Rational(1, 3), Rational(3), 1);
            s.statistic_offset = -1;
            s.scheme_shift = -1;
            return s;
        }
        case ModelKind::TwoWatermelon:
            return plain_half(0.25, 0.75, -0.5, Rational(3, 4), Rational(4, 3), 1);
        case ModelKind::WeightedMotzkin: {
            SchemeConstants s;
            Rational w = id.p_down * id.p_up;
            const Rational& p0 = id.p_flat;
            Rational sr;
            bool square = rational_sqrt(w, sr);
            double sd = std::sqrt(to_double(w));
            double p0d = to_double(p0);
            s.rho_H = 1.0 / (p0d + 2 * sd);
            s.tau_H = (p0d + sd) / (p0d + 2 * sd);
            s.c_H = -std::sqrt(sd * s.rho_H);
            s.size_unit = 1;
            if (square) {
                s.tau_H_exact = (p0 + sr) / (p0 + 2 * sr);
                s.q_c = (p0 + 2 * sr) / (p0 + sr);
                s.q_c.canonicalize();
            } else if (p0 == 0) {
                // s cancels: q_c = 2 regardless of the (irrational) weights
                s.tau_H_exact = Rational(1, 2);
                s.q_c = Rational(2);
            } else {
                s.tau_H_rational = false;
                s.q_c_rational = false;
                s.surd_p0 = p0;
                s.surd_w = w;
            }
            return s;
        }
        case ModelKind::WallWatermelon: {
            SchemeConstants s = plain_half(0.25, 0.5, -0.5, Rational(1, 2), Rational(2), 2);
            s.outer_m = 2 * id.m;
            s.lambda_G = -2.0 * id.m;
            s.statistic_offset = 1;
            s.scheme_shift = 2;
            s.negbin_r = 2 * id.m;
            s.boltzmann_shift = 0;
            s.has_prefactor_M = true;
            s.lambda_M = -0.5;
            s.c_M = 0.25;  // z (1-4z)^{-1/2} ~ (1/4) (1-4z)^{-1/2}
            return s;
        }
        case ModelKind::ColouredWalk: {
            SchemeConstants s = plain_half(0.5, 1.0, -std::sqrt(2.0), Rational(1), Rational(1), 1);
            s.outer_m = id.m;
            s.lambda_G = -static_cast<double>(id.m);
            s.negbin_r = id.m;
            s.boltzmann_shift = 0;
            s.has_prefactor_M = true;
            s.lambda_M = -0.5;
            s.c_M = std::sqrt(2.0);  // sqrt((1+2z)/(1-2z)) ~ sqrt(2) (1-2z)^{-1/2}
            s.prefactor_parity_pair = true;  // H is even: conjugate singularity at -1/2
            return s;
        }
        case ModelKind::QuarterPlane:
            return scheme_constants(qp_factors(id).marked);
    }
    throw std::logic_error("scheme_constants: unhandled model");
}

int compare_q_to_qc(const ModelId& id, const Rational& q) {
    SchemeConstants s = scheme_constants(id);
    if (s.q_c_rational) return cmp(q, s.q_c);
    // q vs (p0 + 2 s)/(p0 + s):  sign of  A + B*sqrt(w),  A = p0 (q-1), B = q-2
    Rational A = s.surd_p0 * (q - 1), B = q - 2;
    int sa = sgn(A), sb = sgn(B);
    if (sa >= 0 && sb >= 0) return (sa == 0 && sb == 0) ? 0 : 1;
    if (sa <= 0 && sb <= 0) return (sa == 0 && sb == 0) ? 0 : -1;
    // opposite signs; |A| vs |B| sqrt(w) decided by A^2 vs B^2 w (w not a
    // rational square here, so equality is impossible)
    int c = cmp(A * A, B * B * s.surd_w);
    if (sa > 0) return c > 0 ? 1 : -1;
    return c > 0 ? -1 : 1;
}

// ---------------------------------------------------------------------------
// closed-form H evaluation with first two derivatives (order-2 jets)

namespace {

struct Jet2 {
    double v = 0, d1 = 0, d2 = 0;
    static Jet2 var(double x) { return {x, 1.0, 0.0}; }
    static Jet2 cst(double c) { return {c, 0.0, 0.0}; }
};

Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v, a.v * b.d1 + a.d1 * b.v, a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2};
}
Jet2 operator*(double c, const Jet2& a) { return {c * a.v, c * a.d1, c * a.d2}; }
Jet2 operator/(const Jet2& a, const Jet2& b) {
    double iv = 1.0 / b.v;
    Jet2 inv{iv, -b.d1 * iv * iv, (2 * b.d1 * b.d1 - b.v * b.d2) * iv * iv * iv};
    return a * inv;
}
Jet2 jet_sqrt(const Jet2& a) {
    double s = std::sqrt(a.v);
    double d1 = a.d1 / (2 * s);
    double d2 = a.d2 / (2 * s) - a.d1 * a.d1 / (4 * a.v * s);
    return {s, d1, d2};
}

Jet2 h_jet(const ModelId& id, double x) {
    Jet2 z = Jet2::var(x);
    Jet2 one = Jet2::cst(1.0);
    switch (id.kind) {
        case ModelKind::DyckExcursion:
        case ModelKind::WallWatermelon:
            return 0.5 * (one - jet_sqrt(one - 4.0 * z));
        case ModelKind::DyckBridge:
            return one - jet_sqrt(one - 4.0 * z);
        case ModelKind::MotzkinExcursion:
            return z + 0.5 * (one - z - jet_sqrt((one + z) * (one - 3.0 * z)));
        case ModelKind::MotzkinBridge:
            return one - jet_sqrt((one + z) * (one - 3.0 * z));
        case ModelKind::WeightedMotzkin: {
            double p0 = to_double(id.p_flat), w = to_double(id.p_down * id.p_up);
            Jet2 r = (one - p0 * z) * (one - p0 * z) - 4.0 * w * (z * z);
            return 0.5 * (one + p0 * z - jet_sqrt(r));
        }
        case ModelKind::PermFixedPoints:
            return (one + 2.0 * z - jet_sqrt(one - 4.0 * z)) / (2.0 * (Jet2::cst(2.0) + z));
        case ModelKind::TwoWatermelon:
            return z + 0.5 * (one - jet_sqrt(one - 4.0 * z));
        case ModelKind::ColouredWalk:
            return one - jet_sqrt(one - 4.0 * (z * z));
        case ModelKind::QuarterPlane:
            return h_jet(qp_factors(id).marked, x);
    }
    throw std::logic_error("h_jet: unhandled model");
}

}  // namespace

double h_eval(const ModelId& id, double x, int derivative_order) {
    if (derivative_order < 0 || derivative_order > 2)
        throw std::invalid_argument("h_eval: derivative order must be 0, 1 or 2");
    double rho = scheme_constants(id).rho_H;
    if (!(x > 0.0) || !(x < rho)) throw std::domain_error("h_eval: x outside (0, rho_H)");
    Jet2 j = h_jet(id, x);
    return derivative_order == 0 ? j.v : derivative_order == 1 ? j.d1 : j.d2;
}

double prefactor_eval(const ModelId& id, double z) {
    switch (id.kind) {
        case ModelKind::WallWatermelon:
            if (!(z < 0.25)) throw std::domain_error("prefactor_eval: z >= 1/4");
            return z / std::sqrt(1.0 - 4.0 * z);
        case ModelKind::ColouredWalk:
            if (!(std::fabs(z) < 0.5)) throw std::domain_error("prefactor_eval: |z| >= 1/2");
            return std::sqrt((1.0 + 2.0 * z) / (1.0 - 2.0 * z));
        default:
            return 1.0;
    }
}

// ---------------------------------------------------------------------------
// coefficient tables via the series construction

namespace {

Series z_times(const Series& a) {
    Series r(a.order());
    for (std::size_t i = 1; i <= a.order(); ++i) r[i] = a[i - 1];
    return r;
}

// H series of each plain model, to the given order
Series inner_series(const ModelId& id, std::size_t N) {
    switch (id.kind) {
        case ModelKind::DyckExcursion:
            return z_times(catalan_series(N));
        case ModelKind::DyckBridge:
            return series_scale(z_times(catalan_series(N)), Rational(2));
        case ModelKind::MotzkinExcursion: {
            Series m = motzkin_series(N);
            Series h = z_times(z_times(m));  // z^2 M
            h[1] += 1;                       // + z
            return h;
        }
        case ModelKind::MotzkinBridge: {
            Series m = motzkin_series(N);
            Series h = series_scale(z_times(z_times(m)), Rational(2));
            h[1] += 1;
            return h;
        }
        case ModelKind::WeightedMotzkin: {
            Rational w = id.p_down * id.p_up;
            Series m = weighted_motzkin_series(id.p_flat, w, N);
            Series h = series_scale(z_times(z_times(m)), w);
            h[1] += id.p_flat;
            return h;
        }
        case ModelKind::PermFixedPoints: {
            // H = z (1 + C(z)) / (2 + z)
            Series c = catalan_series(N);
            c[0] += 1;
            Series num = z_times(c);
            Series den(N);
            den[0] = 2;
            den[1] = 1;
            return series_mul(num, series_recip(den));
        }
        case ModelKind::TwoWatermelon: {
            Series h = z_times(catalan_series(N));  // z C
            h[1] += 1;                              // + z
            return h;
        }
        default:
            throw std::logic_error("inner_series: not a plain-series model");
    }
}

void fill_sequence_powers(BivariateTable& t, const Series& H) {
    long N = t.max_n;
    t.rows[0][0] = 1;
    Series S = Series::constant(Rational(1), static_cast<std::size_t>(N));
    for (long k = 1; k <= N; ++k) {
        S = series_mul(S, H);
        for (long n = k; n <= N; ++n)
            if (S[static_cast<std::size_t>(n)] != 0) t.rows[n][k] = S[static_cast<std::size_t>(n)];
    }
}

}  // namespace

Rational watermelon_prefactor(int m, long n) {
    Rational p(factorial(static_cast<unsigned long>(n - 1)));
    for (int i = 0; i < m; ++i) p *= Rational(factorial(static_cast<unsigned long>(2 * i + 1)));
    for (int i = 0; i + 1 < m; ++i) p *= Rational(factorial(static_cast<unsigned long>(2 * n + 2 * i)));
    for (int i = 0; i <= 2 * m - 2; ++i) p /= Rational(factorial(static_cast<unsigned long>(n + i)));
    p.canonicalize();
    return p;
}

std::vector<Rational> watermelon_partition_formula(int m, long n) {
    if (m < 1 || n < 1) throw std::domain_error("watermelon_partition_formula: need m >= 1, n >= 1");
    Rational pref = watermelon_prefactor(m, n);
    std::vector<Rational> coeffs;  // index i <-> q^{i+2}
    // f_l = binom(2n-l, n-1) binom(l+2m-3, l-2), l = 2..n+1
    Int f = binomial(static_cast<unsigned long>(2 * n - 2), static_cast<unsigned long>(n - 1));
    for (long l = 2; l <= n + 1; ++l) {
        coeffs.push_back(pref * Rational(f));
        if (l < n + 1) {
            // ratio to the next l: (n+1-l)/(2n-l) * (l+2m-2)/(l-1)
            f *= (n + 1 - l) * (l + 2 * m - 2);
            mpz_divexact_ui(f.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(2 * n - l));
            mpz_divexact_ui(f.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(l - 1));
        }
    }
    for (auto& c : coeffs) c.canonicalize();
    return coeffs;
}

std::vector<Rational> watermelon_row_via_series(int m, long n) {
    if (m < 1 || n < 1) throw std::domain_error("watermelon_row_via_series: need m >= 1, n >= 1");
    std::size_t N = static_cast<std::size_t>(n);
    Series B = series_recip(series_sqrt(Series::one_plus(Rational(-4), 1, N)));
    Series zC = z_times(catalan_series(N));
    Rational pref = watermelon_prefactor(m, n);
    std::vector<Rational> coeffs;
    Series S = B;
    for (long j = 0; j + 1 <= n; ++j) {  // l = j + 2 runs 2..n+1
        Rational g(binomial(static_cast<unsigned long>(j + 2 * m - 1), static_cast<unsigned long>(j)));
        coeffs.push_back(pref * g * S[static_cast<std::size_t>(n - 1)]);
        S = series_mul(S, zC);
    }
    for (auto& c : coeffs) c.canonicalize();
    return coeffs;
}

QpFactors qp_factors(const ModelId& id) {
    if (id.kind != ModelKind::QuarterPlane) throw std::logic_error("qp_factors: not a quarter-plane model");
    QpFactors f;
    switch (id.qp) {
        case QpKind::Diagonal:
            f.marked = ModelId::dyck_excursion();
            f.unmarked = ModelId::dyck_excursion();
            break;
        case QpKind::Diabolo:
            // x-steps are +-1 (Dyck factor), y-steps are -1/0/+1 (Motzkin factor);
            // x-axis contacts are returns of the y-walk and vice versa
            if (id.axis == Axis::X) {
                f.marked = ModelId::motzkin_excursion();
                f.unmarked = ModelId::dyck_excursion();
            } else {
                f.marked = ModelId::dyck_excursion();
                f.unmarked = ModelId::motzkin_excursion();
            }
            break;
        case QpKind::King:
            f.marked = ModelId::motzkin_excursion();
            f.unmarked = ModelId::motzkin_excursion();
            break;
    }
    return f;
}

long QpFactors::marked_index(long n) const {
    return marked.kind == ModelKind::DyckExcursion ? n / 2 : n;
}
long QpFactors::unmarked_index(long n) const {
    return unmarked.kind == ModelKind::DyckExcursion ? n / 2 : n;
}
bool QpFactors::row_nonempty(long n) const {
    bool has_dyck = marked.kind == ModelKind::DyckExcursion || unmarked.kind == ModelKind::DyckExcursion;
    return !has_dyck || n % 2 == 0;
}

BivariateTable coefficient_table(const ModelId& id, long max_n, long limit) {
    if (max_n < 0) throw std::domain_error("coefficient_table: max_n must be >= 0");
    if (max_n > limit)
        throw std::overflow_error("coefficient_table: max_n " + std::to_string(max_n) +
                                  " exceeds the resource limit " + std::to_string(limit));
    BivariateTable t;
    t.model = id.name();
    t.max_n = max_n;
    t.rows.assign(static_cast<std::size_t>(max_n) + 1, Row{});
    std::size_t N = static_cast<std::size_t>(max_n);

    switch (id.kind) {
        case ModelKind::DyckExcursion:
        case ModelKind::DyckBridge:
        case ModelKind::MotzkinExcursion:
        case ModelKind::MotzkinBridge:
        case ModelKind::WeightedMotzkin:
        case ModelKind::TwoWatermelon:
            fill_sequence_powers(t, inner_series(id, N));
            break;

        case ModelKind::PermFixedPoints: {
            // f_{n,k} = [z^{n+1}] H^{k+1}
            Series H = inner_series(id, N + 1);
            Series S = H;
            for (long k = 0; k <= max_n; ++k) {
                for (long n = k; n <= max_n; ++n)
                    if (S[static_cast<std::size_t>(n + 1)] != 0)
                        t.rows[n][k] = S[static_cast<std::size_t>(n + 1)];
                if (k < max_n) S = series_mul(S, H);
            }
            break;
        }

        case ModelKind::WallWatermelon: {
            // row n, contacts l = j+2: pref(n,m) binom(j+2m-1, j) [z^{n-1}] B (zC)^j
            if (max_n == 0) break;  // no length-0 watermelon row
            Series B = series_recip(series_sqrt(Series::one_plus(Rational(-4), 1, N)));
            Series zC = z_times(catalan_series(N));
            std::vector<Rational> pref(N + 1);
            for (long n = 1; n <= max_n; ++n) pref[static_cast<std::size_t>(n)] = watermelon_prefactor(id.m, n);
            Series S = B;
            for (long j = 0; j <= max_n - 1; ++j) {
                Rational g(binomial(static_cast<unsigned long>(j + 2 * id.m - 1), static_cast<unsigned long>(j)));
                for (long n = j + 1; n <= max_n; ++n) {
                    const Rational& v = S[static_cast<std::size_t>(n - 1)];
                    if (v != 0) {
                        Rational e = pref[static_cast<std::size_t>(n)] * g * v;
                        e.canonicalize();
                        t.rows[n][j + 2] = e;
                    }
                }
                if (j < max_n - 1) S = series_mul(S, zC);
            }
            break;
        }

        case ModelKind::ColouredWalk: {
            Series A(N);
            {
                Series s = series_sqrt(Series::one_plus(Rational(-4), 2, N));
                A = series_sub(Series::constant(Rational(1), N), s);
            }
            Series M = series_mul(Series::one_plus(Rational(2), 1, N),
                                  series_recip(series_sqrt(Series::one_plus(Rational(-4), 2, N))));
            Series S = M;
            for (long k = 0; k <= max_n; ++k) {
                Rational g(binomial(static_cast<unsigned long>(k + id.m - 1), static_cast<unsigned long>(k)));
                for (long n = 0; n <= max_n; ++n) {
                    const Rational& v = S[static_cast<std::size_t>(n)];
                    if (v != 0) t.rows[n][k] = g * v;
                }
                if (k < max_n) S = series_mul(S, A);
            }
            break;
        }

        case ModelKind::QuarterPlane: {
            QpFactors f = qp_factors(id);
            BivariateTable marked = coefficient_table(f.marked, f.marked_index(max_n), limit);
            for (long n = 0; n <= max_n; ++n) {
                if (!f.row_nonempty(n)) continue;
                long mi = f.marked_index(n), ui = f.unmarked_index(n);
                Int count = f.unmarked.kind == ModelKind::DyckExcursion ? catalan_number(ui)
                                                                        : motzkin_number(ui);
                for (const auto& [k, v] : marked.rows[static_cast<std::size_t>(mi)])
                    t.rows[static_cast<std::size_t>(n)][k] = v * Rational(count);
            }
            break;
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// fast exact rows

namespace {

Row dyck_row(long n, bool bridge) {
    Row row;
    if (n == 0) {
        row[0] = 1;
        return row;
    }
    // f_{n,k} = [t^n](t C)^k = ballot(n-k, k); bridges carry an extra 2^k
    Int f = catalan_number(n - 1);  // k = 1
    for (long k = 1; k <= n; ++k) {
        Int e = f;
        if (bridge) e <<= k;
        row[k] = Rational(e);
        if (k < n) {
            f *= (k + 1) * (n - k);
            mpz_divexact_ui(f.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(k));
            mpz_divexact_ui(f.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(2 * n - k - 1));
        }
    }
    return row;
}

// Rows of Motzkin-type models through the unconstrained-walk weight table
// W(i, a) and the cycle decomposition: with i = n - k,
//   f_{n,k} = (1/i) sum_{j>=1} binom(k,j) p0^{k-j} (bf*p_up)^j * j * W(i, -j)
// plus the all-flat term p0^n at k = n. Templated so integer weights run on
// plain mpz (no per-operation gcd).
template <typename V>
Row motzkin_like_row_impl(long n, const V& p_down, const V& p_flat, const V& p_up, int bridge_factor) {
    Row row;
    if (n == 0) {
        row[0] = 1;
        return row;
    }
    const bool unit_weights = (p_down == 1 && p_flat == 1 && p_up == 1 && bridge_factor == 1);

    std::vector<V> pf_pow(static_cast<std::size_t>(n) + 1), pu_pow(static_cast<std::size_t>(n) + 1);
    pf_pow[0] = 1;
    pu_pow[0] = 1;
    V pub = p_up * bridge_factor;
    for (long i = 1; i <= n; ++i) {
        pf_pow[static_cast<std::size_t>(i)] = pf_pow[static_cast<std::size_t>(i - 1)] * p_flat;
        pu_pow[static_cast<std::size_t>(i)] = pu_pow[static_cast<std::size_t>(i - 1)] * pub;
    }
    if (p_flat != 0) row[n] = Rational(pf_pow[static_cast<std::size_t>(n)]);

    // W over altitudes a = -i..i, stored with offset i
    std::vector<V> W{V(1)};
    V acc, term;
    for (long i = 1; i <= n - 1; ++i) {
        std::vector<V> W2(static_cast<std::size_t>(2 * i) + 1);
        auto old_at = [&](long a) -> const V* {
            if (a < -(i - 1) || a > i - 1) return nullptr;
            return &W[static_cast<std::size_t>(a + i - 1)];
        };
        for (long a = -i; a <= i; ++a) {
            V& out = W2[static_cast<std::size_t>(a + i)];
            if (const V* up = old_at(a - 1)) out += (p_up == 1 ? *up : V(p_up * *up));
            if (p_flat != 0)
                if (const V* fl = old_at(a)) out += (p_flat == 1 ? *fl : V(p_flat * *fl));
            if (const V* dn = old_at(a + 1)) out += (p_down == 1 ? *dn : V(p_down * *dn));
        }
        W = std::move(W2);

        long k = n - i;
        acc = 0;
        Int bin(1);  // binom(k, j), advanced over j
        long jmax = std::min(i, k);
        for (long j = 1; j <= jmax; ++j) {
            bin *= (k - j + 1);
            mpz_divexact_ui(bin.get_mpz_t(), bin.get_mpz_t(), static_cast<unsigned long>(j));
            if (p_flat == 0 && j < k) continue;
            const V& w = W[static_cast<std::size_t>(-j + i)];
            if (w == 0) continue;
            term = V(bin * j) * w;
            if (!unit_weights)
                term = term * pf_pow[static_cast<std::size_t>(k - j)] * pu_pow[static_cast<std::size_t>(j)];
            acc += term;
        }
        if (acc != 0) {
            Rational r(acc);
            r /= i;
            r.canonicalize();
            row[k] = r;
        }
    }
    return row;
}

Row motzkin_like_row(long n, const Rational& p_down, const Rational& p_flat, const Rational& p_up,
                     int bridge_factor) {
    if (p_down.get_den() == 1 && p_flat.get_den() == 1 && p_up.get_den() == 1)
        return motzkin_like_row_impl<Int>(n, p_down.get_num(), p_flat.get_num(), p_up.get_num(),
                                          bridge_factor);
    return motzkin_like_row_impl<Rational>(n, p_down, p_flat, p_up, bridge_factor);
}

Row two_watermelon_row(long n) {
    Row row;
    if (n == 0) {
        row[0] = 1;
        return row;
    }
    // f_{n,k} = sum_j binom(k,j) ballot(n-k, j), the j = 0 term only at k = n
    for (long k = 1; k <= n; ++k) {
        long i = n - k;
        Int acc(i == 0 ? 1 : 0);
        Int bin(1);
        Int bal = catalan_number(i);  // ballot(i, 1)
        for (long j = 1; j <= k; ++j) {
            bin *= (k - j + 1);
            mpz_divexact_ui(bin.get_mpz_t(), bin.get_mpz_t(), static_cast<unsigned long>(j));
            acc += bin * bal;
            if (j < k) {
                // ballot(i, j+1) = ballot(i, j) * (j+1)(2i+j) / (j (i+j+1))
                bal *= (j + 1) * (2 * i + j);
                mpz_divexact_ui(bal.get_mpz_t(), bal.get_mpz_t(), static_cast<unsigned long>(j));
                mpz_divexact_ui(bal.get_mpz_t(), bal.get_mpz_t(), static_cast<unsigned long>(i + j + 1));
            }
        }
        row[k] = Rational(acc);
    }
    return row;
}

Row wall_watermelon_row(int m, long n) {
    Row row;
    if (n == 0) return row;  // empty by convention
    std::vector<Rational> c = watermelon_partition_formula(m, n);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) row[static_cast<long>(i) + 2] = c[i];
    return row;
}

Row coloured_walk_row(int m, long n) {
    Row row;
    // nonreturning-walk counts: m_hat(0)=1, m_hat(2i)=binom(2i,i), m_hat(2i+1)=2 binom(2i,i)
    std::vector<Int> mhat(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        Int b = binomial(static_cast<unsigned long>(i - i % 2), static_cast<unsigned long>((i - i % 2) / 2));
        if (i % 2 == 1) b *= 2;
        mhat[static_cast<std::size_t>(i)] = b;
    }
    row[0] = Rational(mhat[static_cast<std::size_t>(n)]);
    for (long k = 1; 2 * k <= n; ++k) {
        // [t^j] (2tC)^k = 2^k ballot(j-k, k), walk part m_hat(n - 2j)
        Int g = binomial(static_cast<unsigned long>(k + m - 1), static_cast<unsigned long>(k));
        Int acc(0);
        Int bal(1);  // ballot(0, k)
        for (long j = k; 2 * j <= n; ++j) {
            acc += bal * mhat[static_cast<std::size_t>(n - 2 * j)];
            long i = j - k;
            // ballot(i+1, k) = ballot(i, k) * (2i+k)(2i+k+1) / ((i+1)(i+k+1))
            bal *= (2 * i + k) * (2 * i + k + 1);
            mpz_divexact_ui(bal.get_mpz_t(), bal.get_mpz_t(), static_cast<unsigned long>(i + 1));
            mpz_divexact_ui(bal.get_mpz_t(), bal.get_mpz_t(), static_cast<unsigned long>(i + k + 1));
        }
        if (acc != 0) {
            acc <<= k;  // 2^k
            row[k] = Rational(g * acc);
        }
    }
    return row;
}

constexpr long kPermRowSeriesLimit = 420;

}  // namespace

Row exact_row(const ModelId& id, long n) {
    if (n < 0) throw std::domain_error("exact_row: n must be >= 0");
    switch (id.kind) {
        case ModelKind::DyckExcursion:
            return dyck_row(n, false);
        case ModelKind::DyckBridge:
            return dyck_row(n, true);
        case ModelKind::MotzkinExcursion:
            return motzkin_like_row(n, Rational(1), Rational(1), Rational(1), 1);
        case ModelKind::MotzkinBridge:
            return motzkin_like_row(n, Rational(1), Rational(1), Rational(1), 2);
        case ModelKind::WeightedMotzkin:
            return motzkin_like_row(n, id.p_down, id.p_flat, id.p_up, 1);
        case ModelKind::TwoWatermelon:
            return two_watermelon_row(n);
        case ModelKind::WallWatermelon:
            return wall_watermelon_row(id.m, n);
        case ModelKind::ColouredWalk:
            return coloured_walk_row(id.m, n);
        case ModelKind::PermFixedPoints: {
            if (n > kPermRowSeriesLimit)
                throw std::overflow_error("exact_row: perm-fp rows above n = " +
                                          std::to_string(kPermRowSeriesLimit) +
                                          " are not supported (use the moment extractor)");
            return coefficient_table(id, n, kPermRowSeriesLimit).rows[static_cast<std::size_t>(n)];
        }
        case ModelKind::QuarterPlane: {
            QpFactors f = qp_factors(id);
            Row row;
            if (!f.row_nonempty(n)) return row;
            Row marked = exact_row(f.marked, f.marked_index(n));
            long ui = f.unmarked_index(n);
            Int count = f.unmarked.kind == ModelKind::DyckExcursion ? catalan_number(ui)
                                                                    : motzkin_number(ui);
            for (const auto& [k, v] : marked) row[k] = v * Rational(count);
            return row;
        }
    }
    throw std::logic_error("exact_row: unhandled model");
}

std::vector<ModelId> catalog_models() {
    return {
        ModelId::dyck_excursion(),
        ModelId::dyck_bridge(),
        ModelId::motzkin_excursion(),
        ModelId::motzkin_bridge(),
        ModelId::weighted_motzkin(Rational(1), Rational(2), Rational(1)),
        ModelId::perm_fp(321),
        ModelId::perm_fp(132),
        ModelId::perm_fp(213),
        ModelId::two_watermelon(),
        ModelId::wall_watermelon(1),
        ModelId::wall_watermelon(2),
        ModelId::coloured_walk(1),
        ModelId::coloured_walk(2),
        ModelId::quarter_plane(QpKind::Diagonal, Axis::X),
        ModelId::quarter_plane(QpKind::Diabolo, Axis::X),
        ModelId::quarter_plane(QpKind::Diabolo, Axis::Y),
        ModelId::quarter_plane(QpKind::King, Axis::X),
    };
}

}  // namespace qgibbs
