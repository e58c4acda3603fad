#pragma once

#include "tnum/series.hpp"
#include "tnum/simd/kernels.hpp"
#include "tnum/xpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tnum {

enum class ScanKind { wn, wstar };

/// One height shell h: all P with coefficient degrees < h, so H(P) <= q^{h-1}.
struct RecordRow {
    long h = 0;
    XPoly witness;
    // wstar only: the root of the witness closest to xi.
    std::optional<Series> root;
    BigInt value_valuation;
    // valuation / (h - 1) for wn, valuation / (h - 1) - 1 for wstar; absent at h = 1.
    std::optional<Rational> exponent_ratio;
};

struct RecordTable {
    ScanKind kind = ScanKind::wn;
    long n = 1;
    long h_max = 1;
    long window = 0;
    std::vector<RecordRow> rows;
    // Max ratio over the rows with h - 1 >= ceil((h_max - 1) / 2).
    std::optional<Rational> best_exponent;
    // Polynomials whose value could not be separated from zero.
    std::uint64_t excluded = 0;
    std::vector<std::string> excluded_examples;
};

struct ScanOptions {
    // Dense window: coefficients of P(xi) are scanned through this exponent.
    long window = 256;
    std::uint64_t enumeration_budget = 1ULL << 24U;
    unsigned threads = 1;
    // Sparse refinement cap for values vanishing through the window.
    BigInt refine_cap = 4096;
    // wstar with n = 1: use the root finder instead of the linear shortcut.
    bool generic_roots = false;
    // Null selects the dispatched kernels.
    const simd::Kernels* kernels = nullptr;
};

RecordTable wn_scan(const Series& xi, long n, long h_max, const ScanOptions& options = {});
RecordTable wstar_scan(const Series& xi, long n, long h_max, const ScanOptions& options = {});

std::string to_string(ScanKind kind);

// Witness order: (deg_X, coefficient degrees from X^deg down, coefficient
// codes from the top T-degree down).
bool witness_less(const XPoly& a, const XPoly& b);

} // namespace tnum
