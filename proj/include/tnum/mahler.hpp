#pragma once

#include "tnum/bigint.hpp"
#include "tnum/field.hpp"
#include "tnum/series.hpp"
#include "tnum/xpoly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tnum {

/// 0/1 selector over block indices: a finite prefix followed by a periodic
/// tail that contains at least one 1.
struct Mask {
    std::vector<int> prefix;
    std::vector<int> tail{1};

    bool at(std::uint64_t j) const;
    // First index where the two masks differ, if any within prefix + lcm of periods.
    static std::optional<std::uint64_t> first_difference(const Mask& a, const Mask& b);
};

/// Parameters of xi(r, m) = sum_j a_j alpha_j, with r = p^s and m an
/// eventually constant sequence (m_0 = 1, m_j >= 2 afterwards).
class MahlerSpec {
public:
    MahlerSpec(FieldRef field, unsigned r_exponent, std::vector<std::uint64_t> m_prefix, std::uint64_t m_tail,
               std::optional<Mask> mask = std::nullopt);

    const FieldRef& field() const noexcept { return field_; }
    unsigned r_exponent() const noexcept { return r_exponent_; }
    const BigInt& r() const noexcept { return r_; }
    const std::vector<std::uint64_t>& m_prefix() const noexcept { return m_prefix_; }
    std::uint64_t m_tail() const noexcept { return m_tail_; }
    const std::optional<Mask>& mask() const noexcept { return mask_; }

    std::uint64_t m(std::uint64_t j) const noexcept;
    bool active(std::uint64_t j) const noexcept { return !mask_ || mask_->at(j); }

    MahlerSpec with_mask(std::optional<Mask> mask) const;

private:
    FieldRef field_;
    unsigned r_exponent_;
    BigInt r_;
    std::vector<std::uint64_t> m_prefix_;
    std::uint64_t m_tail_;
    std::optional<Mask> mask_;
};

/// Caps on the sizes the constructions may reach.
struct ExponentBudget {
    // Largest T-degree of a dense polynomial (annihilator coefficients).
    BigInt dense = BigInt(1) << 24;
    // Largest horizon for sparse series work.
    BigInt sparse = BigInt(1) << 8192;
};

// M(i, j) = m_i m_{i+1} ... m_j, and 1 when i > j.
BigInt big_m(const MahlerSpec& spec, std::int64_t i, std::int64_t j);
// r_j = r^{M(0, j)}.
BigInt r_j(const MahlerSpec& spec, std::uint64_t j);

// Mahler's alpha = sum_{n >= 1} T^{-r^n} for r = p^s over the given field.
Series mahler_alpha(const FieldRef& field, const BigInt& r, const BigInt& horizon);
// alpha_j = sum_{n >= 1} T^{-r_j^n}.
Series alpha_block(const MahlerSpec& spec, std::uint64_t j, const BigInt& horizon);
// xi(r, m), or xi_a(r, m) when the spec carries a mask.
Series xi(const MahlerSpec& spec, const BigInt& horizon);
// Sum of the first `blocks` active alpha_j, added as series.
Series direct_sum_blocks(const MahlerSpec& spec, std::uint64_t blocks, const BigInt& horizon);
// Number of blocks whose smallest exponent r_j lies at or below `horizon`.
std::uint64_t blocks_through(const MahlerSpec& spec, const BigInt& horizon);

Fq a_coeff(const MahlerSpec& spec, std::uint64_t j, const BigInt& n);
Fq b_coeff(const MahlerSpec& spec, std::uint64_t j, const BigInt& n);
// The integer l of the b(j, n) rule (before reduction mod p).
std::uint64_t b_level(const MahlerSpec& spec, std::uint64_t j, const BigInt& n);

struct ApproximantId {
    std::uint64_t j = 0;
    std::uint64_t k = 1;
};

// alpha(j, k) = sum_{t <= j} alpha_t + sum_{n <= k} b(j, n) T^{-r_{j+1}^n}.
Series approximant(const MahlerSpec& spec, ApproximantId id, const BigInt& horizon);

// Exponent D with T^D clearing the denominators of the annihilator.
BigInt annihilator_denominator(const MahlerSpec& spec, ApproximantId id);
// Exact height q^D of the cleared annihilator, without building it.
QPow annihilator_height(const MahlerSpec& spec, ApproximantId id);
// Bound q^{r_{j+1}^k r_j} on H(alpha(j, k)).
QPow approximant_height_bound(const MahlerSpec& spec, ApproximantId id);
// T^D (X^{r_j} - X + ...), of X-degree r_j, monic leading coefficient T^D.
XPoly annihilator(const MahlerSpec& spec, ApproximantId id, const ExponentBudget& budget = {});
// |annihilator(alpha(j, k))| with alpha(j, k) known through horizon + D.
AbsValue annihilator_residual(const MahlerSpec& spec, ApproximantId id, const BigInt& horizon,
                              const ExponentBudget& budget = {});

// First `count` elements of K_j.
std::vector<std::uint64_t> k_set(const MahlerSpec& spec, std::uint64_t j, std::size_t count);

struct DistanceCheck {
    ApproximantId id;
    BigInt claimed;       // valuation r_{j+1}^{k+2}
    AbsValue measured;
    bool pass = false;
};

// |xi - alpha(j, k_i)| against q^{-r_{j+1}^{k_i + 2}}; `index` is 1-based.
DistanceCheck distance_identity_check(const MahlerSpec& spec, std::uint64_t j, std::size_t index,
                                      const ExponentBudget& budget = {});

struct SandwichCheck {
    ApproximantId id;
    BigInt lower;  // r_{j+1}^{k+1}
    BigInt upper;  // r_{j+1}^{k+2}
    AbsValue measured;
    bool in_window = false;
    bool at_upper = false;
};

SandwichCheck distance_sandwich(const MahlerSpec& spec, ApproximantId id, const ExponentBudget& budget = {});

// Exact valuation of xi - alpha(j, k), refined up to the sparse budget.
AbsValue approximant_distance(const MahlerSpec& spec, ApproximantId id, const ExponentBudget& budget = {});

// |alpha^r + T^{-r} - alpha| at the given horizon.
AbsValue frobenius_residual(const FieldRef& field, const BigInt& r, const BigInt& horizon);
// |alpha_t^{r_j} + sum_{i <= M(t+1, j)} T^{-r_t^i} - alpha_t| at the given horizon.
AbsValue telescope_residual(const MahlerSpec& spec, std::uint64_t t, std::uint64_t j, const BigInt& horizon);

} // namespace tnum
