#include "taxi/series.hpp"

#include <stdexcept>

namespace taxi {

IntSeries IntSeries::mul(const IntSeries& other) const {
    const unsigned n = std::min(order(), other.order());
    IntSeries out = IntSeries::zero(n);
    for (unsigned i = 0; i <= n; ++i) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; i + j <= n; ++j) {
            if (other.c_[j] == 0) continue;
            out.c_[i + j] += c_[i] * other.c_[j];
        }
    }
    return out;
}

IntSeries IntSeries::inverse() const {
    if (c_.empty() || (c_[0] != 1 && c_[0] != -1))
        throw std::invalid_argument("IntSeries::inverse: constant term must be +-1");
    const unsigned n = order();
    IntSeries out = IntSeries::zero(n);
    const mpz_class u = c_[0];  // u^2 = 1
    out.c_[0] = u;
    for (unsigned k = 1; k <= n; ++k) {
        mpz_class s = 0;
        for (unsigned j = 1; j <= k; ++j) s += c_[j] * out.c_[k - j];
        out.c_[k] = -u * s;
    }
    return out;
}

IntSeries IntSeries::sub_from_one() const {
    IntSeries out = *this;
    for (auto& x : out.c_) x = -x;
    if (!out.c_.empty()) out.c_[0] += 1;
    return out;
}

}  // namespace taxi
