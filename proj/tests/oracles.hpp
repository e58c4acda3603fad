#pragma once

// Test-only oracles. Nothing here calls into the code paths they check:
// arithmetic is done on plain integer vectors and dense arrays.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Poly = std::vector<std::int64_t>;  // ascending, over F_p

inline Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
    return a;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t r = 1;
    for (std::int64_t e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p) {
        if (e & 1) {
            r = r * b % p;
        }
    }
    return r;
}

// Schoolbook long division over F_p.
inline std::pair<Poly, Poly> divrem(Poly a, Poly b, std::int64_t p) {
    a = trim(a);
    b = trim(b);
    if (a.size() < b.size()) {
        return {{}, a};
    }
    Poly q(a.size() - b.size() + 1, 0);
    const std::int64_t il = inv_mod(b.back(), p);
    for (std::size_t k = q.size(); k-- > 0;) {
        const std::int64_t t = a[k + b.size() - 1] * il % p;
        q[k] = t;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[k + i] = ((a[k + i] - t * b[i]) % p + p) % p;
        }
    }
    a.resize(b.size() - 1);
    return {trim(q), trim(a)};
}

inline Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        }
    }
    return trim(c);
}

// Coefficients of sum over blocks of sum_t T^{-base_j^t}, dense through n_max,
// accumulated as integers mod p.
inline std::vector<std::int64_t> dense_block_sum(const std::vector<std::uint64_t>& bases, std::uint64_t n_max,
                                                 std::int64_t p) {
    std::vector<std::int64_t> c(n_max + 1, 0);
    for (auto base : bases) {
        for (unsigned __int128 x = base; x <= n_max; x *= base) {
            auto idx = static_cast<std::size_t>(x);
            c[idx] = (c[idx] + 1) % p;
        }
    }
    return c;
}

using Big = boost::multiprecision::cpp_int;

// Sparse analogue of dense_block_sum for huge exponents: every power
// base^t <= n_max of every base, counted mod p; zero counts dropped.
inline std::map<Big, std::int64_t> sparse_block_sum(const std::vector<Big>& bases, const Big& n_max, std::int64_t p) {
    std::map<Big, std::int64_t> c;
    for (const auto& base : bases) {
        for (Big x = base; x <= n_max; x *= base) {
            auto& v = c[x];
            v = (v + 1) % p;
        }
    }
    for (auto it = c.begin(); it != c.end();) {
        it = it->second == 0 ? c.erase(it) : std::next(it);
    }
    return c;
}

inline std::int64_t lookup(const std::map<Big, std::int64_t>& c, const Big& n) {
    auto it = c.find(n);
    return it == c.end() ? 0 : it->second;
}

} // namespace oracle
