#pragma once

#include "tnum/series.hpp"
#include "tnum/tpoly.hpp"

#include <string>
#include <vector>

namespace tnum {

/// Polynomial in X with coefficients in F_q[T], ascending powers of X.
class XPoly {
public:
    XPoly() = default;
    explicit XPoly(FieldRef field);
    XPoly(FieldRef field, std::vector<TPoly> coeffs);

    // Nested element codes: coeffs[i] lists the T-coefficients of X^i.
    static XPoly from_codes(FieldRef field, const std::vector<std::vector<std::uint32_t>>& codes);

    const FieldRef& field() const noexcept { return field_; }
    const std::vector<TPoly>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const TPoly& coeff(std::size_t i) const { return coeffs_.at(i); }
    const TPoly& lead() const { return coeffs_.back(); }

    // Max over the coefficients of |c| = q^{deg c}.
    QPow height() const;
    // Largest T-degree among the coefficients.
    long max_coeff_degree() const noexcept;
    bool is_primitive() const;
    XPoly derivative() const;

    friend XPoly operator+(const XPoly& a, const XPoly& b);
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    friend bool operator==(const XPoly& a, const XPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const;

private:
    void trim();

    FieldRef field_;
    std::vector<TPoly> coeffs_;
};

// P divided by the monic gcd of its coefficients.
XPoly primitive_part(const XPoly& p);
// Pseudo-remainder: lc(b)^k a mod b with k = deg a - deg b + 1.
XPoly pseudo_rem(const XPoly& a, const XPoly& b);
// Primitive gcd in F_q(T)[X] (primitive remainder sequence), normalized so
// the leading coefficient is monic in T.
XPoly xpoly_gcd(const XPoly& a, const XPoly& b);
// Primitive part of a / b for b dividing a in F_q(T)[X].
XPoly xpoly_exact_quotient(const XPoly& a, const XPoly& b);

// H(P); ZeroPolynomial for P = 0.
QPow xpoly_height(const XPoly& p);

struct EvalResult {
    Series value;
    AbsValue abs;
};

// P(s) in series arithmetic. Powers of s are assembled from Frobenius images
// s^{p^k} following the base-p digits of each exponent.
EvalResult xpoly_eval(const XPoly& p, const Series& s);

// As xpoly_eval, but re-materializes s at doubled horizons until |P(s)| is
// exact or zero. Throws PrecisionExhausted at the cap.
EvalResult xpoly_eval_refined(const XPoly& p, const Series& s, const RefinePolicy& policy = {});

} // namespace tnum
