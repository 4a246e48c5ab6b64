#pragma once

// Directed-rounded decimal arithmetic on exact integers/rationals. Bound
// digits are certified by integer comparisons only: the n-th root of p/q
// rounded up (down) at `decimals` places is the minimal (maximal) D with
// (D/10^decimals)^n >= p/q (resp. <=).

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace taxi {

enum class Rounding : std::uint8_t { Up, Down };

// Directed n-th root of the positive rational p/q, scaled by 10^decimals.
mpz_class nth_root_scaled(const mpz_class& p, const mpz_class& q, unsigned n,
                          unsigned decimals, Rounding dir);

// Directed rounding of p/q itself, scaled by 10^decimals.
mpz_class ratio_scaled(const mpz_class& p, const mpz_class& q, unsigned decimals, Rounding dir);

// lambda = mu^4 - 1 where mu = mu_scaled/10^mu_decimals, directed at lambda_decimals.
mpz_class lambda_from_mu_scaled(const mpz_class& mu_scaled, unsigned mu_decimals,
                                unsigned lambda_decimals, Rounding dir);

// Render D/10^decimals as a plain decimal string ("1.60574").
std::string scaled_to_string(const mpz_class& scaled, unsigned decimals);

}  // namespace taxi
