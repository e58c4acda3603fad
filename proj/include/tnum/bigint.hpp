#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace tnum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(const BigInt& base, std::uint64_t exponent) {
    BigInt result = 1;
    BigInt b = base;
    while (exponent != 0) {
        if (exponent & 1U) {
            result *= b;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            b *= b;
        }
    }
    return result;
}

// base^exponent for an unbounded exponent; throws if the result cannot be
// represented in memory (exponent beyond 64 bits).
BigInt ipow(const BigInt& base, const BigInt& exponent);

// If n == base^e for some e >= 0 returns e, otherwise -1.
std::int64_t exact_log(const BigInt& n, const BigInt& base);

// Floor division that rounds toward negative infinity.
BigInt floor_div(const BigInt& a, const BigInt& b);

inline std::string to_string(const BigInt& v) { return v.str(); }

// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_string(const Rational& v);

// Decimal rendering with a fixed number of fractional digits (display only).
std::string to_decimal(const Rational& v, int digits = 6);

} // namespace tnum
