#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>

namespace ramlocus {

// Arbitrary-precision integers and rationals. Group sizes and moduli p^n
// overflow 64 bits quickly, so everything size-like is a Nat.
using Nat = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Nat pow_nat(uint64_t base, unsigned exp) {
    Nat r = 1;
    Nat b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

// Natural log of a positive Nat, safe for values far beyond double range.
inline double log_nat(const Nat& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    const unsigned bits = boost::multiprecision::msb(x);
    if (bits <= 52) return std::log(x.convert_to<double>());
    const Nat top = x >> (bits - 52);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

inline double log_rational(const Rational& r) {
    return log_nat(boost::multiprecision::numerator(r)) -
           log_nat(boost::multiprecision::denominator(r));
}

}  // namespace ramlocus
