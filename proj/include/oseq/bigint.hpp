#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

namespace oseq {

using BigInt = mpz_class;

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

// Natural log of a positive big integer from its binary exponent and a
// double-precision mantissa; relative error is at the level of one ulp.
inline double natural_log(const BigInt& x) {
    if (sgn(x) <= 0) {
        return -HUGE_VAL;
    }
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

} // namespace oseq
