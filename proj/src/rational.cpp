#include "qgibbs/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace qgibbs {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto bad = [&]() { throw std::invalid_argument("parse_rational: cannot parse '" + s + "'"); };

    std::string t = s;
    bool neg = false;
    std::size_t pos = 0;
    if (t[pos] == '+' || t[pos] == '-') {
        neg = (t[pos] == '-');
        ++pos;
    }
    t = t.substr(pos);
    if (t.empty()) bad();

    auto slash = t.find('/');
    if (slash != std::string::npos) {
        std::string num = t.substr(0, slash), den = t.substr(slash + 1);
        if (num.empty() || den.empty()) bad();
        for (char c : num + den)
            if (!std::isdigit(static_cast<unsigned char>(c))) bad();
        Int n_int(num), d_int(den);
        if (d_int == 0) throw std::domain_error("parse_rational: zero denominator");
        Rational r(n_int, d_int);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }

    // Decimal with optional exponent: digits[.digits][e[+-]digits]
    std::string mantissa = t;
    long exp10 = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        mantissa = t.substr(0, epos);
        std::string es = t.substr(epos + 1);
        if (es.empty()) bad();
        std::size_t q = 0;
        bool eneg = false;
        if (es[q] == '+' || es[q] == '-') {
            eneg = (es[q] == '-');
            ++q;
        }
        if (q >= es.size()) bad();
        long v = 0;
        for (; q < es.size(); ++q) {
            if (!std::isdigit(static_cast<unsigned char>(es[q]))) bad();
            v = v * 10 + (es[q] - '0');
            if (v > 1000000) bad();
        }
        exp10 = eneg ? -v : v;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_dot) bad();
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else {
            bad();
        }
    }
    if (!seen_digit) bad();
    while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
    Int num(digits.empty() ? "0" : digits, 10);
    long e = exp10 - frac_digits;
    Rational r(num);
    if (e > 0)
        r *= Rational(int_pow(Int(10), static_cast<unsigned long>(e)));
    else if (e < 0)
        r /= Rational(int_pow(Int(10), static_cast<unsigned long>(-e)));
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

namespace {

// floor(log10(|r|)) computed exactly for nonzero r.
long floor_log10_abs(const Rational& r) {
    Int num = abs(r.get_num()), den = r.get_den();
    // digits-based bracket, then exact adjustment
    long dn = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10));
    long dd = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    long e = dn - dd;  // within +-1 of the truth
    for (long cand = e + 1; cand >= e - 1; --cand) {
        // is |r| >= 10^cand ?  <=>  num*10^{-cand} >= den
        Int lhs = num, rhs = den;
        if (cand >= 0)
            rhs *= int_pow(Int(10), static_cast<unsigned long>(cand));
        else
            lhs *= int_pow(Int(10), static_cast<unsigned long>(-cand));
        if (lhs >= rhs) return cand;
    }
    return e - 2;  // unreachable for sane inputs
}

}  // namespace

std::string to_decimal(const Rational& r, int sig) {
    if (sig < 1) sig = 1;
    if (r == 0) return "0";
    bool neg = r < 0;
    Rational a = neg ? Rational(-r) : r;

    long e = floor_log10_abs(a);
    // m = round_half_even(a * 10^{sig-1-e}), an integer with sig digits
    long shift = sig - 1 - e;
    Int num = a.get_num(), den = a.get_den();
    if (shift >= 0)
        num *= int_pow(Int(10), static_cast<unsigned long>(shift));
    else
        den *= int_pow(Int(10), static_cast<unsigned long>(-shift));
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int twice = rem * 2;
    int cmp = ::cmp(twice, den);
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    std::string m = q.get_str();
    if (static_cast<int>(m.size()) > sig) {
        // rounding carried into a new digit (e.g. 999.5 -> 1000)
        ++e;
        m = m.substr(0, sig);
    }

    // trim trailing zeros but keep at least one digit
    std::size_t last = m.find_last_not_of('0');
    std::string digits = m.substr(0, std::max<std::size_t>(last + 1, 1));

    std::string out;
    if (e >= -4 && e < sig + 2) {
        if (e >= 0) {
            if (static_cast<long>(digits.size()) <= e) digits.append(e + 1 - digits.size(), '0');
            out = digits.substr(0, e + 1);
            if (digits.size() > static_cast<std::size_t>(e + 1)) out += "." + digits.substr(e + 1);
        } else {
            out = "0." + std::string(-e - 1, '0') + digits;
        }
    } else {
        out = digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::string(e >= 0 ? "+" : "-") + std::to_string(std::labs(e));
    }
    return neg ? "-" + out : out;
}

double log2_rational(const Rational& r) {
    if (r <= 0) throw std::domain_error("log2_rational: nonpositive argument");
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, r.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, r.get_den().get_mpz_t());
    return (std::log2(mn) + static_cast<double>(en)) - (std::log2(md) + static_cast<double>(ed));
}

}  // namespace qgibbs
