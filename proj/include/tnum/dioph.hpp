#pragma once

#include "tnum/mahler.hpp"
#include "tnum/roots.hpp"
#include "tnum/series.hpp"
#include "tnum/xpoly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tnum {

struct LiouvilleCheck {
    // Largest valuation of A - B the inequality allows:
    // log H_A * deg B + log H_B * deg A.
    BigInt bound;
    AbsValue measured;
    bool pass = false;
};

// Distance of the stored roots against the stored height and degree bounds.
// Throws IndistinguishableAtHorizon when the roots agree through the horizon
// and cannot be refined apart.
LiouvilleCheck liouville_check(const RootDescriptor& a, const RootDescriptor& b,
                               const RefinePolicy& policy = {});

// Exact form for a/b against c/d (b, d nonzero, fractions reduced).
LiouvilleCheck liouville_check(const TPoly& a, const TPoly& b, const TPoly& c, const TPoly& d);

// a/b as a degree-one root descriptor, known through `horizon`.
RootDescriptor rational_descriptor(const TPoly& a, const TPoly& b, const BigInt& horizon);

struct LiouvilleSummary {
    std::uint64_t pairs = 0;
    std::uint64_t failures = 0;
    // Pairs also measured through series expansions, and disagreements there.
    std::uint64_t series_checked = 0;
    std::uint64_t series_mismatches = 0;
    std::vector<std::string> failure_examples;
};

// Reduced fractions a/b with b monic and max(deg a, deg b) <= max_degree.
std::vector<std::pair<TPoly, TPoly>> rationals_of_height(const FieldRef& field, long max_degree);

// Every unordered pair of distinct rationals of height <= q^max_degree. One
// pair in `series_stride` is re-measured through series_dist.
LiouvilleSummary liouville_rationals(const FieldRef& field, long max_degree, std::uint64_t series_stride = 997);

// alpha(j, k) with the annihilator as defining polynomial (left zero when its
// T-degree passes the dense budget), the exact annihilator height and degree r_j.
RootDescriptor approximant_descriptor(const MahlerSpec& spec, ApproximantId id, const BigInt& horizon,
                                      const ExponentBudget& budget = {});

struct ApproximantPair {
    std::uint64_t j = 0;
    std::uint64_t k = 0;
    std::uint64_t k2 = 0;
    LiouvilleCheck check;
};

struct ApproximantLiouville {
    std::vector<ApproximantPair> pairs;
    // alpha(j, k) == alpha(j, k2): no b(j, n) term between them.
    std::uint64_t coincident = 0;
    // Pairs whose horizon passed the sparse budget.
    std::uint64_t skipped = 0;
    std::uint64_t failures = 0;
};

// All pairs alpha(j, k), alpha(j, k2) with j <= j_max, 1 <= k < k2 <= k_max.
ApproximantLiouville liouville_approximants(const MahlerSpec& spec, std::uint64_t j_max, std::uint64_t k_max,
                                            const ExponentBudget& budget = {});

struct DirichletOptions {
    std::uint64_t max_unknowns = 4096;
    BigInt refine_cap = BigInt(1) << 14;
};

struct DirichletWitness {
    // Witness for xi - shift.
    XPoly poly;
    // Polynomial part removed from xi.
    TPoly shift;
    BigInt value_valuation;
    // value_valuation / (h - 1).
    Rational exponent_ratio;
    // n h: the first (n+1)h - 1 coefficients of P(xi - shift) vanish.
    BigInt guaranteed_valuation;
    // c with guaranteed_valuation = (n+1)h - n - c.
    long construction_constant = 0;
    std::size_t kernel_dimension = 0;
};

// Kernel element of the linear system over F_q with coefficient degrees < h.
// Among the kernel basis vectors the one with the largest value valuation is
// returned (first on ties). Throws ZeroValueWitness when some basis vector
// vanishes at xi, or cannot be separated from zero.
DirichletWitness dirichlet_witness(const Series& xi, long n, long h, const DirichletOptions& options = {});

struct ApplioRow {
    std::uint64_t k = 0;
    BigInt distance_valuation;
    // log_q beta(j, k) = r_{j+1}^k r_j.
    BigInt log_beta;
    Rational distance_ratio;
    bool ratio_ok = false;
    // log_q of the annihilator height.
    BigInt height_exponent;
    Rational height_ratio;
    bool height_ok = false;
    // log beta(j, k_{i+1}) / log beta(j, k_i); absent on the last row.
    std::optional<BigInt> beta_ratio;
    bool beta_ok = true;
};

struct ApplioReport {
    std::uint64_t j = 0;
    std::vector<ApplioRow> rows;
    // r_{j+1}^2 / r_j.
    Rational claimed_ratio;
    // d = r_j, delta = rho = claimed_ratio - d, theta = r_{j+p}^2.
    Rational d;
    Rational delta;
    Rational rho;
    BigInt theta;
    // [d + delta - 1, (d + rho) d theta / delta - 1] for w*_{r_j}.
    Rational window_lower;
    Rational window_upper;
    bool all_pass = false;
};

ApplioReport applio_consistency(const MahlerSpec& spec, std::uint64_t j, std::size_t count,
                                const ExponentBudget& budget = {});

struct TypeRow {
    std::uint64_t j = 0;
    BigInt lower;          // 2 m_j - 1
    BigInt upper_tstar;    // m_j + 2 M(j, j+p)
    BigInt upper_t;        // 2 m_j + 2 M(j, j+p)
    BigInt refined_tstar;  // m_j + 2 m_j m_{j+1}
    BigInt refined_t;      // 2 m_j + 2 m_j m_{j+1}
};

struct TypeBounds {
    std::uint64_t truncation = 0;
    std::vector<TypeRow> rows;
    BigInt lower;
    BigInt upper_tstar;
    BigInt upper_t;
    // Only when the tail of m is >= 3.
    std::optional<BigInt> refined_tstar;
    std::optional<BigInt> refined_t;
};

// Sups over 1 <= j <= J.
TypeBounds type_bounds(const MahlerSpec& spec, std::uint64_t truncation);

} // namespace tnum
