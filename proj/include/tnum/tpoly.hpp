#pragma once

#include "tnum/bigint.hpp"
#include "tnum/field.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tnum {

/// Exact absolute value of an element of F_q[T]: either 0 or q^exponent.
struct QPow {
    bool zero = true;
    BigInt exponent = 0;

    static QPow of_zero() { return QPow{}; }
    static QPow power(BigInt e) { return QPow{false, std::move(e)}; }

    friend QPow operator*(const QPow& a, const QPow& b) {
        if (a.zero || b.zero) {
            return of_zero();
        }
        return power(a.exponent + b.exponent);
    }
    friend bool operator==(const QPow& a, const QPow& b) {
        return a.zero == b.zero && (a.zero || a.exponent == b.exponent);
    }
    friend bool operator<(const QPow& a, const QPow& b) {
        if (a.zero || b.zero) {
            return a.zero && !b.zero;
        }
        return a.exponent < b.exponent;
    }
    std::string to_string() const;
};

/// Dense polynomial in F_q[T], coefficients in ascending powers of T.
class TPoly {
public:
    static constexpr long kZeroDegree = -1;

    TPoly() = default;
    explicit TPoly(FieldRef field);
    TPoly(FieldRef field, std::vector<Fq> coeffs);

    static TPoly zero(FieldRef field) { return TPoly(std::move(field)); }
    static TPoly constant(FieldRef field, Fq c);
    static TPoly monomial(FieldRef field, Fq c, std::size_t degree);
    // From element codes, ascending.
    static TPoly from_codes(FieldRef field, const std::vector<std::uint32_t>& codes);

    const FieldRef& field() const noexcept { return field_; }
    const std::vector<Fq>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    // kZeroDegree for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    Fq coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Fq{}; }
    Fq lead() const noexcept { return coeffs_.empty() ? Fq{} : coeffs_.back(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == Fq{1}; }
    QPow abs() const;

    TPoly operator-() const;
    friend TPoly operator+(const TPoly& a, const TPoly& b);
    friend TPoly operator-(const TPoly& a, const TPoly& b);
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    TPoly scaled(Fq c) const;
    TPoly shifted(std::size_t k) const;  // multiply by T^k
    TPoly monic() const;
    Fq eval(Fq x) const;

    friend bool operator==(const TPoly& a, const TPoly& b) {
        return a.coeffs_ == b.coeffs_ && (a.field_ == b.field_ || *a.field_ == *b.field_);
    }

    std::string to_string(char var = 'T') const;

private:
    void trim();

    FieldRef field_;
    std::vector<Fq> coeffs_;
};

struct DivRem {
    TPoly quotient;
    TPoly remainder;
};

DivRem divrem(const TPoly& a, const TPoly& b);
// Monic generator of the ideal (a, b); zero when both are zero.
TPoly gcd(const TPoly& a, const TPoly& b);

struct ContentPrimitive {
    TPoly content;
    std::vector<TPoly> primitive;
};

// Content is the monic gcd of the entries; the primitive vector has gcd 1.
ContentPrimitive content_primitive(const std::vector<TPoly>& entries);

} // namespace tnum
