// Exact finite-n Gibbs distributions of a statistic: weights f_{n,k} q^k,
// partition value, moments, tilted probability generating function, and a
// deterministic inverse-CDF sampler for the statistic value.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qgibbs/bivariate_table.hpp"

namespace qgibbs {

struct GibbsDistribution {
    std::string model;
    long n = 0;
    Rational q{1};
    std::vector<std::pair<long, Rational>> weights;  // (k, f_{n,k} q^k), ascending k
    Rational partition{0};                           // sum of weights

    Rational pmf(long k) const;
};

// f_n(q) = sum_k f_{n,k} q^k
Rational partition_function(const Row& row, const Rational& q);
Rational partition_function(const BivariateTable& table, long n, const Rational& q);

GibbsDistribution gibbs_pmf(const Row& row, const std::string& model, long n, const Rational& q);
GibbsDistribution gibbs_pmf(const BivariateTable& table, long n, const Rational& q);

// E(X^r), exact
Rational gibbs_moment(const GibbsDistribution& dist, int r);
// E((X - E X)^r), exact
Rational gibbs_central_moment(const GibbsDistribution& dist, int r);

// E(v^{X_n(q)}) = p(vq)/p(q); computed as f_n(qv)/f_n(q)
Rational tilted_pgf(const Row& row, const Rational& q, const Rational& v);
Rational tilted_pgf(const BivariateTable& table, long n, const Rational& q, const Rational& v);

// i.i.d. draws from the exact pmf. Counter-based generator: the stream is a
// pure function of (seed, index), identical on every platform. Inverse CDF
// uses 64-bit thresholds floor(2^64 F_k) computed from the exact cumulative
// weights, so each atom's probability is exact to within 2^-63.
std::vector<long> sample_statistic(const GibbsDistribution& dist, std::uint64_t seed, std::size_t count);

}  // namespace qgibbs
