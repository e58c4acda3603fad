#include "tnum/bigint.hpp"

#include "tnum/error.hpp"

#include <sstream>

namespace tnum {

BigInt ipow(const BigInt& base, const BigInt& exponent) {
    if (exponent < 0) {
        raise(Errc::InvalidArgument, "negative exponent");
    }
    if (exponent > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        if (base == 0 || base == 1) {
            return base;
        }
        raise(Errc::ExponentBudgetExceeded, "power too large to represent");
    }
    return ipow(base, exponent.convert_to<std::uint64_t>());
}

std::int64_t exact_log(const BigInt& n, const BigInt& base) {
    if (n < 1 || base < 2) {
        return -1;
    }
    std::int64_t e = 0;
    BigInt v = n;
    while (v != 1) {
        BigInt q;
        BigInt r;
        boost::multiprecision::divide_qr(v, base, q, r);
        if (r != 0) {
            return -1;
        }
        v = q;
        ++e;
    }
    return e;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0 && ((r < 0) != (b < 0))) {
        --q;
    }
    return q;
}

std::string to_string(const Rational& v) {
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& v, int digits) {
    BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    const bool negative = num < 0;
    if (negative) {
        num = -num;
    }
    const BigInt scale = ipow(BigInt(10), static_cast<std::uint64_t>(digits));
    // round half up on the magnitude
    BigInt scaled = (num * scale * 2 + den) / (den * 2);
    const BigInt whole = scaled / scale;
    const BigInt frac = scaled % scale;
    std::ostringstream out;
    if (negative && scaled != 0) {
        out << '-';
    }
    out << whole.str();
    if (digits > 0) {
        std::string f = frac.str();
        out << '.' << std::string(static_cast<std::size_t>(digits) - f.size(), '0') << f;
    }
    return out.str();
}

} // namespace tnum
