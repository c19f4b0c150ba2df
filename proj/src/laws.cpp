#include "qgibbs/laws.hpp"

#include <cmath>
#include <stdexcept>

namespace qgibbs {

LawDescriptor LawDescriptor::negbin(int r, double p) {
    if (r < 1 || !(p > 0.0 && p < 1.0)) throw std::invalid_argument("negbin: need r >= 1, p in (0,1)");
    LawDescriptor l;
    l.kind = Kind::NegBin;
    l.r = r;
    l.p = p;
    return l;
}

LawDescriptor LawDescriptor::rayleigh(double sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("rayleigh: sigma must be > 0");
    LawDescriptor l;
    l.kind = Kind::Rayleigh;
    l.sigma = sigma;
    return l;
}

LawDescriptor LawDescriptor::chi(int k) {
    if (k < 1) throw std::invalid_argument("chi: k must be >= 1");
    LawDescriptor l;
    l.kind = Kind::Chi;
    l.r = k;
    return l;
}

LawDescriptor LawDescriptor::gaussian(double mu, double sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("gaussian: sigma must be > 0");
    LawDescriptor l;
    l.kind = Kind::Gaussian;
    l.mu = mu;
    l.sigma = sigma;
    return l;
}

LawDescriptor LawDescriptor::mittag_leffler(double alpha, double beta, double scale) {
    if (!(alpha > 0 && alpha < 1) || beta < 0 || !(scale > 0))
        throw std::invalid_argument("mittag_leffler: need alpha in (0,1), beta >= 0, scale > 0");
    LawDescriptor l;
    l.kind = Kind::MittagLeffler;
    l.alpha = alpha;
    l.beta = beta;
    l.scale = scale;
    return l;
}

std::string LawDescriptor::name() const {
    switch (kind) {
        case Kind::NegBin: return "negbin";
        case Kind::Rayleigh: return "rayleigh";
        case Kind::Chi: return "chi";
        case Kind::Gaussian: return "gaussian";
        case Kind::MittagLeffler: return "mittag-leffler";
    }
    return "?";
}

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::rint(x); }

}  // namespace

double gamma_real(double x) {
    if (is_nonpositive_integer(x)) throw std::domain_error("gamma_real: pole at nonpositive integer");
    return std::tgamma(x);
}

double gamma_reciprocal(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    double g = std::tgamma(x);
    if (std::isinf(g)) return 0.0;
    return 1.0 / g;
}

double regularized_gamma_p(double a, double x) {
    if (x < 0 || a <= 0) throw std::domain_error("regularized_gamma_p: bad arguments");
    if (x == 0) return 0.0;
    if (x < a + 1.0) {
        // series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

namespace {

double double_factorial_odd(int j) {  // (j-1)!! for even j: 1*3*...*(j-1)
    double r = 1.0;
    for (int i = j - 1; i >= 1; i -= 2) r *= i;
    return r;
}

// Stirling numbers of the second kind up to n = 12 suffice here
double stirling2(int n, int k) {
    static double table[13][13];
    static bool init = false;
    if (!init) {
        table[0][0] = 1.0;
        for (int i = 1; i <= 12; ++i)
            for (int j = 1; j <= i; ++j)
                table[i][j] = table[i - 1][j - 1] + j * table[i - 1][j];
        init = true;
    }
    if (n < 0 || k < 0 || n > 12 || k > 12) throw std::invalid_argument("stirling2: out of table");
    return table[n][k];
}

double ml_moment(double alpha, double beta, double scale, int r) {
    if (r == 0) return 1.0;
    double core;
    if (beta == 0.0) {
        // limit of Gamma(b)Gamma(r + b/a) / (Gamma(b/a)Gamma(a r + b)) as b -> 0
        core = (1.0 / alpha) * gamma_real(static_cast<double>(r)) / gamma_real(alpha * r);
    } else {
        core = gamma_real(beta) * gamma_real(r + beta / alpha) /
               (gamma_real(beta / alpha) * gamma_real(alpha * r + beta));
    }
    return std::pow(scale, r) * core;
}

}  // namespace

double law_moment(const LawDescriptor& law, int r) {
    if (r < 0) throw std::domain_error("law_moment: r must be >= 0");
    if (r == 0) return 1.0;
    switch (law.kind) {
        case LawDescriptor::Kind::NegBin: {
            // raw moments via factorial moments: E X^(j) = (r)_j ((1-p)/p)^j
            double ratio = (1.0 - law.p) / law.p, acc = 0.0;
            for (int j = 1; j <= r; ++j) {
                double rising = 1.0;
                for (int i = 0; i < j; ++i) rising *= law.r + i;
                acc += stirling2(r, j) * rising * std::pow(ratio, j);
            }
            return acc;
        }
        case LawDescriptor::Kind::Rayleigh:
            return std::pow(law.sigma, r) * std::pow(2.0, r / 2.0) * gamma_real(1.0 + r / 2.0);
        case LawDescriptor::Kind::Chi:
            return std::pow(2.0, r / 2.0) * gamma_real((law.r + r) / 2.0) / gamma_real(law.r / 2.0);
        case LawDescriptor::Kind::Gaussian: {
            double acc = 0.0;
            for (int j = 0; j <= r; j += 2) {
                double binom = 1.0;
                for (int i = 0; i < j; ++i) binom = binom * (r - i) / (i + 1);
                acc += binom * std::pow(law.mu, r - j) * std::pow(law.sigma, j) * double_factorial_odd(j);
            }
            return acc;
        }
        case LawDescriptor::Kind::MittagLeffler:
            return ml_moment(law.alpha, law.beta, law.scale, r);
    }
    throw std::logic_error("law_moment: unhandled law");
}

double law_pdf(const LawDescriptor& law, double x) {
    switch (law.kind) {
        case LawDescriptor::Kind::NegBin: {
            long k = std::lround(x);
            if (k < 0) return 0.0;
            double lg = std::lgamma(static_cast<double>(k) + law.r) - std::lgamma(static_cast<double>(k) + 1) -
                        std::lgamma(static_cast<double>(law.r));
            return std::exp(lg + law.r * std::log(law.p) + k * std::log1p(-law.p));
        }
        case LawDescriptor::Kind::Rayleigh:
            if (x < 0) return 0.0;
            return x / (law.sigma * law.sigma) * std::exp(-x * x / (2 * law.sigma * law.sigma));
        case LawDescriptor::Kind::Chi: {
            if (x < 0) return 0.0;
            if (x == 0) return law.r == 1 ? std::sqrt(2.0 / M_PI) : 0.0;
            double k = law.r;
            double lg = (1.0 - k / 2.0) * std::log(2.0) + (k - 1.0) * std::log(x) - x * x / 2.0 -
                        std::lgamma(k / 2.0);
            return std::exp(lg);
        }
        case LawDescriptor::Kind::Gaussian: {
            double t = (x - law.mu) / law.sigma;
            return std::exp(-t * t / 2.0) / (law.sigma * std::sqrt(2.0 * M_PI));
        }
        case LawDescriptor::Kind::MittagLeffler: {
            if (law.beta == 0.0) throw std::domain_error("law_pdf: degenerate Mittag-Leffler");
            if (x < 0) return 0.0;
            double y = x / law.scale;
            if (y == 0.0) return 0.0;
            const double a = law.alpha, boa = law.beta / law.alpha;
            double pref = gamma_real(law.beta + 1.0) / (a * gamma_real(boa + 1.0));
            double sum = 0.0, max_term = 0.0;
            bool converged = false;
            for (int n = 1; n <= 600; ++n) {
                double rec = gamma_reciprocal(-n * a);
                if (rec != 0.0) {
                    double lt = std::lgamma(n + 1.0);
                    double term = ((n % 2 == 0) ? 1.0 : -1.0) * rec * std::exp((n + boa - 1.0) * std::log(y) - lt);
                    sum += term;
                    double at = std::fabs(term);
                    if (at > max_term) max_term = at;
                    if (n > 4 && at < 1e-15 * std::fabs(sum)) {
                        converged = true;
                        break;
                    }
                }
            }
            if (!converged && max_term > 0)
                throw std::range_error("law_pdf: Mittag-Leffler series did not converge");
            if (max_term > 1e12 * std::fabs(sum) && std::fabs(sum) > 0)
                throw std::range_error("law_pdf: Mittag-Leffler series outside its validity domain");
            return pref * sum / law.scale;
        }
    }
    throw std::logic_error("law_pdf: unhandled law");
}

namespace {

double adaptive_simpson(const LawDescriptor& law, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = law_pdf(law, lm), frm = law_pdf(law, rm);
    double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(law, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(law, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate_pdf(const LawDescriptor& law, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    double fa = law_pdf(law, a), fm = law_pdf(law, m), fb = law_pdf(law, b);
    double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    return adaptive_simpson(law, a, b, fa, fm, fb, whole, tol, 28);
}

}  // namespace

double law_cdf(const LawDescriptor& law, double x) {
    switch (law.kind) {
        case LawDescriptor::Kind::NegBin: {
            if (x < 0) return 0.0;
            long k = static_cast<long>(std::floor(x + 1e-12));
            double acc = 0.0;
            for (long j = 0; j <= k; ++j) acc += law_pdf(law, static_cast<double>(j));
            return std::min(acc, 1.0);
        }
        case LawDescriptor::Kind::Rayleigh:
            if (x <= 0) return 0.0;
            return -std::expm1(-x * x / (2 * law.sigma * law.sigma));
        case LawDescriptor::Kind::Chi:
            if (x <= 0) return 0.0;
            return regularized_gamma_p(law.r / 2.0, x * x / 2.0);
        case LawDescriptor::Kind::Gaussian:
            return 0.5 * std::erfc(-(x - law.mu) / (law.sigma * std::sqrt(2.0)));
        case LawDescriptor::Kind::MittagLeffler:
            if (x <= 0) return 0.0;
            return std::min(integrate_pdf(law, 0.0, x, 1e-10), 1.0);
    }
    throw std::logic_error("law_cdf: unhandled law");
}

}  // namespace qgibbs
