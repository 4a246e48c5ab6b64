#include "taxi/decimal.hpp"

#include <cmath>
#include <stdexcept>

namespace taxi {

namespace {

// (d/10^dec)^n >= p/q  <=>  d^n * q >= p * 10^{n*dec}
bool root_ge(const mpz_class& d, unsigned n, const mpz_class& q, const mpz_class& rhs) {
    if (d < 0) return false;
    mpz_class dn;
    mpz_pow_ui(dn.get_mpz_t(), d.get_mpz_t(), n);
    return dn * q >= rhs;
}

}  // namespace

mpz_class nth_root_scaled(const mpz_class& p, const mpz_class& q, unsigned n,
                          unsigned decimals, Rounding dir) {
    if (p <= 0 || q <= 0) throw std::invalid_argument("nth_root_scaled: value must be positive");
    if (n == 0) throw std::invalid_argument("nth_root_scaled: n must be >= 1");

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(n) * decimals);
    const mpz_class rhs = p * scale;

    // Float guess for the bracket, then widen until it provably straddles.
    const double guess =
        std::exp((std::log(mpz_get_d(p.get_mpz_t())) - std::log(mpz_get_d(q.get_mpz_t()))) / n +
                 decimals * std::log(10.0));
    mpz_class lo, hi;
    if (std::isfinite(guess) && guess > 1.0) {
        lo = mpz_class(static_cast<unsigned long>(guess * 0.5));
        hi = mpz_class(static_cast<unsigned long>(guess * 2.0) + 2);
    } else {
        // Fall back to a bit-length based bracket (covers huge p).
        const std::size_t bits = mpz_sizeinbase(p.get_mpz_t(), 2);
        const double logv = (static_cast<double>(bits) * std::log(2.0) -
                             std::log(mpz_get_d(q.get_mpz_t()))) / n +
                            decimals * std::log(10.0);
        const double g = std::exp(logv);
        lo = mpz_class(static_cast<unsigned long>(g * 0.25));
        hi = mpz_class(static_cast<unsigned long>(g * 4.0) + 2);
    }
    if (lo < 0) lo = 0;
    while (root_ge(lo, n, q, rhs)) lo /= 2;
    while (!root_ge(hi, n, q, rhs)) hi *= 2;

    // Minimal d with root_ge(d); invariant: !root_ge(lo), root_ge(hi).
    while (lo + 1 < hi) {
        mpz_class mid = (lo + hi) / 2;
        if (root_ge(mid, n, q, rhs)) hi = mid;
        else lo = mid;
    }
    if (dir == Rounding::Up) return hi;
    // Maximal d with d^n*q <= rhs: hi if exact, else hi-1.
    mpz_class dn;
    mpz_pow_ui(dn.get_mpz_t(), hi.get_mpz_t(), n);
    return (dn * q == rhs) ? hi : hi - 1;
}

mpz_class ratio_scaled(const mpz_class& p, const mpz_class& q, unsigned decimals, Rounding dir) {
    if (q <= 0) throw std::invalid_argument("ratio_scaled: denominator must be positive");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, decimals);
    mpz_class num = p * scale, out;
    if (dir == Rounding::Up) mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
    else mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
    return out;
}

mpz_class lambda_from_mu_scaled(const mpz_class& mu_scaled, unsigned mu_decimals,
                                unsigned lambda_decimals, Rounding dir) {
    mpz_class mu4;
    mpz_pow_ui(mu4.get_mpz_t(), mu_scaled.get_mpz_t(), 4);
    mpz_class unit;
    mpz_ui_pow_ui(unit.get_mpz_t(), 10, 4u * mu_decimals);
    return ratio_scaled(mu4 - unit, unit, lambda_decimals, dir);
}

std::string scaled_to_string(const mpz_class& scaled, unsigned decimals) {
    const bool neg = scaled < 0;
    mpz_class a = abs(scaled);
    std::string digits = a.get_str();
    if (digits.size() <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
    std::string out = neg ? "-" : "";
    out += digits.substr(0, digits.size() - decimals);
    if (decimals > 0) {
        out += '.';
        out += digits.substr(digits.size() - decimals);
    }
    return out;
}

}  // namespace taxi
