// Numeric evaluation of the limit distributions: negative binomial,
// Rayleigh, chi, Gaussian, and the two-parameter Mittag-Leffler law.
#pragma once

#include <string>

namespace qgibbs {

struct LawDescriptor {
    enum class Kind { NegBin, Rayleigh, Chi, Gaussian, MittagLeffler };
    Kind kind = Kind::Gaussian;
    int r = 1;          // NegBin r / Chi degrees of freedom
    double p = 0.5;     // NegBin success probability, in (0,1)
    double sigma = 1.0; // Rayleigh / Gaussian scale
    double mu = 0.0;    // Gaussian mean
    double alpha = 0.5, beta = 0.5, scale = 1.0;  // Mittag-Leffler

    static LawDescriptor negbin(int r, double p);
    static LawDescriptor rayleigh(double sigma);
    static LawDescriptor chi(int k);
    static LawDescriptor gaussian(double mu, double sigma);
    // beta = 0 is accepted as the degenerate boundary law (moments via the
    // beta -> 0 limit); its density is not evaluable.
    static LawDescriptor mittag_leffler(double alpha, double beta, double scale = 1.0);

    std::string name() const;
};

// Gamma function; throws std::domain_error at the poles (nonpositive integers).
double gamma_real(double x);
// 1/Gamma, defined everywhere: exactly 0 at the poles.
double gamma_reciprocal(double x);
// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

// E(X^r), closed forms.
double law_moment(const LawDescriptor& law, int r);

// Density (probability mass for NegBin, at x = k). The Mittag-Leffler
// density is evaluated by its alternating series; when cancellation would
// eat more than the certified 1e-8 accuracy the call throws
// std::range_error (validity domain exceeded).
double law_pdf(const LawDescriptor& law, double x);

// Distribution function; Mittag-Leffler via adaptive quadrature of the
// density on its validity domain.
double law_cdf(const LawDescriptor& law, double x);

}  // namespace qgibbs
