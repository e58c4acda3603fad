#include "tnum/simd/kernels.hpp"

namespace tnum::simd {

namespace {

void add_mod_p(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = static_cast<std::uint8_t>(dst[i] + src[i]);
        dst[i] = s >= p ? static_cast<std::uint8_t>(s - p) : s;
    }
}

std::size_t first_nonzero(const std::uint8_t* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] != 0) {
            return i;
        }
    }
    return n;
}

} // namespace

const Kernels& scalar_kernels() noexcept {
    static const Kernels k{"scalar", &add_mod_p, &first_nonzero};
    return k;
}

} // namespace tnum::simd
