#pragma once

#include <gmpxx.h>

#include <vector>

namespace taxi {

// Truncated power series with exact integer coefficients, indices 0..order().
class IntSeries {
  public:
    IntSeries() = default;
    explicit IntSeries(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {}
    static IntSeries zero(unsigned order) { return IntSeries(std::vector<mpz_class>(order + 1, 0)); }

    unsigned order() const { return c_.empty() ? 0 : static_cast<unsigned>(c_.size() - 1); }
    const mpz_class& operator[](unsigned i) const { return c_[i]; }
    mpz_class& operator[](unsigned i) { return c_[i]; }
    const std::vector<mpz_class>& coefficients() const { return c_; }

    // Product truncated at min(order, other.order).
    IntSeries mul(const IntSeries& other) const;

    // Multiplicative inverse mod x^{order+1}; requires constant term +-1
    // (keeps coefficients integral).
    IntSeries inverse() const;

    IntSeries sub_from_one() const;  // 1 - this

  private:
    std::vector<mpz_class> c_;
};

}  // namespace taxi
