#pragma once

#include "tnum/bigint.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tnum {

// Element of F_q encoded as sum_i c_i p^i, where (c_0, ..., c_{e-1}) are the
// coordinates in the power basis of the field modulus. Code 0 is zero and
// code 1 is one.
struct Fq {
    std::uint32_t code = 0;

    constexpr bool is_zero() const noexcept { return code == 0; }
    friend constexpr auto operator<=>(Fq, Fq) = default;
};

class Field;
using FieldRef = std::shared_ptr<const Field>;

/// Finite field F_q with q = p^e, e <= 4.
///
/// Multiplication goes through discrete log tables built at construction, so
/// q is capped at 2^20.
class Field {
public:
    static constexpr unsigned kMaxExtension = 4;
    static constexpr std::uint32_t kMaxOrder = 1U << 20U;

    /// Builds F_{p^e}. `modulus` lists the coefficients of a monic degree-e
    /// polynomial over F_p in ascending order; when omitted for e > 1 the
    /// lexicographically smallest monic irreducible is used.
    static FieldRef make(std::uint32_t p, unsigned e = 1,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint32_t p() const noexcept { return p_; }
    unsigned e() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    bool operator==(const Field& other) const noexcept {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

    Fq zero() const noexcept { return Fq{0}; }
    Fq one() const noexcept { return Fq{1}; }
    Fq element(std::uint32_t code) const;
    // Image of an integer under Z -> F_p -> F_q.
    Fq from_int(std::int64_t v) const noexcept;
    Fq from_int(const BigInt& v) const;

    Fq add(Fq a, Fq b) const noexcept;
    Fq sub(Fq a, Fq b) const noexcept;
    Fq neg(Fq a) const noexcept;
    Fq mul(Fq a, Fq b) const noexcept;
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::uint64_t n) const noexcept;
    Fq pow(Fq a, const BigInt& n) const;
    Fq frobenius(Fq a) const noexcept { return pow(a, p_); }
    // Unique b with b^p = a.
    Fq pth_root(Fq a) const noexcept { return pow(a, q_ / p_); }

    std::vector<std::uint32_t> coords(Fq a) const;
    Fq from_coords(const std::vector<std::uint32_t>& c) const;

    std::string to_string(Fq a) const;
    std::string describe() const;

private:
    Field(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus);

    Fq slow_mul(Fq a, Fq b) const;

    std::uint32_t p_;
    unsigned e_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> pow_p_;  // p^i for i <= e
    std::vector<std::uint32_t> exp_;    // exp_[i] = g^i, length q - 1
    std::vector<std::uint32_t> log_;    // log_[code], undefined for 0
};

bool is_prime(std::uint64_t n) noexcept;

// Exhaustive irreducibility test over F_p for a monic polynomial given in
// ascending coefficient order.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p);

void require_same_field(const Field& a, const Field& b);

} // namespace tnum
