#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

#include "taxi/decimal.hpp"

namespace taxi {

// A certified bound on the taxi-walk connective constant, carried as exact
// scaled decimals so published digit strings stay conservative. lambda is
// the derived hard-core activity bound mu^4 - 1, conventionally reported
// with one fewer decimal than mu.
struct BoundReport {
    std::string method;
    bool is_upper = true;
    unsigned decimals = 5;
    mpz_class value_scaled;   // bound = value_scaled / 10^decimals
    unsigned lambda_decimals = 4;
    mpz_class lambda_scaled;  // mu^4-1, directionally rounded like the bound
    std::string parameters;

    std::string value() const { return scaled_to_string(value_scaled, decimals); }
    std::string lambda_value() const { return scaled_to_string(lambda_scaled, lambda_decimals); }
    std::string direction() const { return is_upper ? "upper" : "lower"; }
    std::string rounding() const { return is_upper ? "up" : "down"; }
    double value_approx() const {
        return mpz_get_d(value_scaled.get_mpz_t()) / std::pow(10.0, decimals);
    }

    // Bound = (p/q)^{1/root_n}, rounded in the direction that keeps it valid.
    static BoundReport from_root(std::string method, bool is_upper, const mpz_class& p,
                                 const mpz_class& q, unsigned root_n, std::string parameters,
                                 unsigned decimals = 5) {
        BoundReport r;
        r.method = std::move(method);
        r.is_upper = is_upper;
        r.decimals = decimals;
        r.lambda_decimals = decimals > 0 ? decimals - 1 : 0;
        const Rounding dir = is_upper ? Rounding::Up : Rounding::Down;
        r.value_scaled = nth_root_scaled(p, q, root_n, decimals, dir);
        r.lambda_scaled = lambda_from_mu_scaled(r.value_scaled, decimals, r.lambda_decimals, dir);
        r.parameters = std::move(parameters);
        return r;
    }
};

}  // namespace taxi
