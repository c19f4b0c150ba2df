#include "qgibbs/gibbs.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgibbs {

Rational GibbsDistribution::pmf(long k) const {
    auto it = std::lower_bound(weights.begin(), weights.end(), k,
                               [](const auto& p, long key) { return p.first < key; });
    if (it == weights.end() || it->first != k) return Rational(0);
    Rational r = it->second / partition;
    r.canonicalize();
    return r;
}

Rational partition_function(const Row& row, const Rational& q) {
    if (q <= 0) throw std::domain_error("partition_function: q must be > 0");
    Rational acc(0), qpow(1);
    long last = 0;
    for (const auto& [k, f] : row) {
        qpow *= rational_pow(q, k - last);
        last = k;
        acc += f * qpow;
    }
    acc.canonicalize();
    return acc;
}

Rational partition_function(const BivariateTable& table, long n, const Rational& q) {
    if (n < 0 || n > table.max_n)
        throw std::domain_error("partition_function: n out of table range for " + table.model);
    return partition_function(table.row(n), q);
}

GibbsDistribution gibbs_pmf(const Row& row, const std::string& model, long n, const Rational& q) {
    if (q <= 0) throw std::domain_error("gibbs_pmf: q must be > 0");
    GibbsDistribution d;
    d.model = model;
    d.n = n;
    d.q = q;
    Rational qpow(1);
    long last = 0;
    for (const auto& [k, f] : row) {
        qpow *= rational_pow(q, k - last);
        last = k;
        if (f == 0) continue;
        Rational w = f * qpow;
        w.canonicalize();
        d.partition += w;
        d.weights.emplace_back(k, std::move(w));
    }
    if (d.partition <= 0)
        throw std::domain_error("gibbs_pmf: empty distribution for model " + model + " at n = " +
                                std::to_string(n));
    d.partition.canonicalize();
    return d;
}

GibbsDistribution gibbs_pmf(const BivariateTable& table, long n, const Rational& q) {
    if (n < 0 || n > table.max_n)
        throw std::domain_error("gibbs_pmf: n out of table range for " + table.model);
    return gibbs_pmf(table.row(n), table.model, n, q);
}

Rational gibbs_moment(const GibbsDistribution& dist, int r) {
    if (r < 0) throw std::domain_error("gibbs_moment: r must be >= 0");
    Rational acc(0);
    for (const auto& [k, w] : dist.weights) acc += rational_pow(Rational(k), r) * w;
    Rational out = acc / dist.partition;
    out.canonicalize();
    return out;
}

Rational gibbs_central_moment(const GibbsDistribution& dist, int r) {
    if (r < 0) throw std::domain_error("gibbs_central_moment: r must be >= 0");
    // binomial expansion over raw moments; expanding (k - mu)^r per atom would
    // drag mu's huge denominator through every term
    std::vector<Rational> raw(static_cast<std::size_t>(r) + 1);
    for (int j = 0; j <= r; ++j) raw[static_cast<std::size_t>(j)] = gibbs_moment(dist, j);
    const Rational& mu = raw.size() > 1 ? raw[1] : raw[0];
    Rational acc(0);
    Int binom(1);
    for (int j = r; j >= 0; --j) {
        Rational term = Rational(binom) * raw[static_cast<std::size_t>(j)] *
                        rational_pow(-mu, r - j);
        acc += term;
        binom *= j;
        if (j > 0) mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(r - j + 1));
    }
    acc.canonicalize();
    return acc;
}

Rational tilted_pgf(const Row& row, const Rational& q, const Rational& v) {
    if (v <= 0) throw std::domain_error("tilted_pgf: v must be > 0");
    Rational denom = partition_function(row, q);
    if (denom <= 0) throw std::domain_error("tilted_pgf: empty distribution");
    Rational num = partition_function(row, q * v);
    Rational out = num / denom;
    out.canonicalize();
    return out;
}

Rational tilted_pgf(const BivariateTable& table, long n, const Rational& q, const Rational& v) {
    if (n < 0 || n > table.max_n) throw std::domain_error("tilted_pgf: n out of table range");
    return tilted_pgf(table.row(n), q, v);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::vector<long> sample_statistic(const GibbsDistribution& dist, std::uint64_t seed, std::size_t count) {
    std::vector<long> out;
    out.reserve(count);
    if (count == 0) return out;
    if (dist.weights.empty()) throw std::domain_error("sample_statistic: empty distribution");

    // thresholds T_k = floor(2^64 * F_k); the final one is clamped to 2^64-1
    // so every draw lands
    const std::size_t m = dist.weights.size();
    std::vector<std::uint64_t> thresh(m);
    Int two64 = Int(1) << 64;
    Rational cum(0);
    for (std::size_t i = 0; i < m; ++i) {
        cum += dist.weights[i].second;
        Int num = cum.get_num() * two64 * dist.partition.get_den();
        Int den = cum.get_den() * dist.partition.get_num();
        Int t;
        mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (t >= two64) t = two64 - 1;
        thresh[i] = static_cast<std::uint64_t>(mpz_get_ui(t.get_mpz_t()));
    }
    thresh[m - 1] = ~0ULL;

    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t r = splitmix64(seed + (static_cast<std::uint64_t>(i) + 1) * 0x9E3779B97F4A7C15ULL);
        std::size_t lo = 0, hi = m - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (r < thresh[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        out.push_back(dist.weights[lo].first);
    }
    return out;
}

}  // namespace qgibbs
