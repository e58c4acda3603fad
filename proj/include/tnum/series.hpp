#pragma once

#include "tnum/bigint.hpp"
#include "tnum/field.hpp"
#include "tnum/tpoly.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tnum {

/// Absolute value of a Laurent series in T^{-1}.
///
/// `exact` means |x| = q^{-exponent}; `below` means every known coefficient
/// vanished, so |x| <= q^{-exponent} and nothing more is certain.
struct AbsValue {
    enum class Kind { exact, zero, below };

    Kind kind = Kind::zero;
    BigInt exponent = 0;

    static AbsValue exact(BigInt v) { return {Kind::exact, std::move(v)}; }
    static AbsValue below(BigInt v) { return {Kind::below, std::move(v)}; }
    static AbsValue zero() { return {Kind::zero, 0}; }

    bool is_exact() const noexcept { return kind == Kind::exact; }
    bool is_zero() const noexcept { return kind == Kind::zero; }
    bool is_below() const noexcept { return kind == Kind::below; }

    friend bool operator==(const AbsValue& a, const AbsValue& b) {
        return a.kind == b.kind && (a.kind == Kind::zero || a.exponent == b.exponent);
    }

    // "q^-v", "0" or "<=q^-v".
    std::string to_string() const;
};

// exponent n of T^{-n} -> nonzero coefficient
using TermMap = std::map<BigInt, Fq>;

/// Pure rule producing the coefficients of a conceptually infinite series.
class Generator {
public:
    virtual ~Generator() = default;
    virtual Fq coeff(const BigInt& n) const = 0;
    // Every nonzero term with exponent <= horizon.
    virtual TermMap terms_through(const BigInt& horizon) const = 0;
};

using GeneratorRef = std::shared_ptr<const Generator>;

/// Laurent series sum_n a_n T^{-n} with a precision horizon.
///
/// Coefficients with n <= horizon are known exactly. A series without a
/// horizon is exact: its support is the (finite) stored map. A series with a
/// generator can be re-materialized at any larger horizon.
class Series {
public:
    Series() = default;
    // Literal zero series.
    explicit Series(FieldRef field);

    static Series exact(FieldRef field, TermMap terms);
    static Series truncated(FieldRef field, TermMap terms, BigInt horizon);
    static Series from_generator(FieldRef field, GeneratorRef gen, const BigInt& horizon);
    static Series monomial(FieldRef field, Fq c, const BigInt& n);
    static Series from_tpoly(const TPoly& p);

    const FieldRef& field() const noexcept { return field_; }
    const TermMap& terms() const noexcept { return terms_; }
    const std::optional<BigInt>& horizon() const noexcept { return horizon_; }
    const GeneratorRef& generator() const noexcept { return gen_; }
    bool is_exact() const noexcept { return !horizon_.has_value(); }
    // Generator-backed or exact: can be known to any horizon.
    bool is_extendable() const noexcept { return is_exact() || gen_ != nullptr; }

    Fq coeff(const BigInt& n) const;
    AbsValue abs() const;
    std::optional<BigInt> valuation() const;

    // Same series known through `horizon` (re-materialized from the
    // generator when it extends the current one).
    Series advanced(const BigInt& horizon) const;
    // Coefficients beyond `horizon` forgotten.
    Series truncated_to(const BigInt& horizon) const;

    Series operator-() const;
    Series scaled(Fq c) const;
    // Multiply by T^k (k may be negative).
    Series times_t_power(const BigInt& k) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);

    Series frobenius_pow(const BigInt& t) const;
    Series pth_root() const;

    // Finite rendering, terms in increasing exponent, at most max_terms.
    std::string to_string(std::size_t max_terms = 12) const;

    // View of this series as a generator (exact series become finite ones).
    GeneratorRef as_generator() const;

private:
    FieldRef field_;
    TermMap terms_;
    std::optional<BigInt> horizon_;
    GeneratorRef gen_;
};

// Laurent expansion of a/b at T = infinity, exact through `horizon`.
Series series_from_rational(const TPoly& a, const TPoly& b, const BigInt& horizon);

AbsValue series_dist(const Series& x, const Series& y);

/// Refinement policy: `below` results are recomputed with a doubled horizon
/// until the value becomes exact or the horizon would pass `max_horizon`.
struct RefinePolicy {
    BigInt max_horizon = BigInt(1) << 4096;
};

// |s| with adaptive refinement; returns `below` when the cap was reached.
AbsValue abs_refined(const Series& s, const RefinePolicy& policy = {});

// Horizon sequence used by refinement: max(2K, K + 64), clamped to the cap.
BigInt next_horizon(const BigInt& current, const BigInt& cap);

// Largest horizon allowed for dense materialization (rational expansions).
inline constexpr std::uint64_t kDenseTermLimit = 1ULL << 26U;

} // namespace tnum
