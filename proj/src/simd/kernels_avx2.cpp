#include "tnum/simd/kernels.hpp"

#include <immintrin.h>

namespace tnum::simd {

namespace {

__attribute__((target("avx2"))) void add_mod_p(std::uint8_t* dst, const std::uint8_t* src, std::size_t n,
                                               std::uint8_t p) {
    const __m256i vp = _mm256_set1_epi8(static_cast<char>(p));
    std::size_t i = 0;
    for (; i + kLane <= n; i += kLane) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i s = _mm256_add_epi8(a, b);
        // s - p wraps above s exactly when s < p
        const __m256i r = _mm256_min_epu8(s, _mm256_sub_epi8(s, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
    }
    for (; i < n; ++i) {
        const auto s = static_cast<std::uint8_t>(dst[i] + src[i]);
        dst[i] = s >= p ? static_cast<std::uint8_t>(s - p) : s;
    }
}

__attribute__((target("avx2"))) std::size_t first_nonzero(const std::uint8_t* v, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + kLane <= n; i += kLane) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
        const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(a, zero)));
        if (eq != 0xFFFFFFFFU) {
            return i + static_cast<std::size_t>(__builtin_ctz(~eq));
        }
    }
    for (; i < n; ++i) {
        if (v[i] != 0) {
            return i;
        }
    }
    return n;
}

} // namespace

const Kernels* avx2_kernels() noexcept {
    static const Kernels k{"avx2", &add_mod_p, &first_nonzero};
    return __builtin_cpu_supports("avx2") ? &k : nullptr;
}

} // namespace tnum::simd
