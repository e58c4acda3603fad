#pragma once

#include <cstddef>
#include <cstdint>

namespace tnum::simd {

// Byte kernels over F_p planes (every byte holds a residue in [0, p), p <= 127).
struct Kernels {
    const char* name;
    // dst[i] = (dst[i] + src[i]) mod p
    void (*add_mod_p)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p);
    // Index of the first nonzero byte, or n.
    std::size_t (*first_nonzero)(const std::uint8_t* v, std::size_t n);
};

const Kernels& scalar_kernels() noexcept;
// Null when the CPU lacks AVX2.
const Kernels* avx2_kernels() noexcept;
// AVX2 when available unless TNUM_FORCE_SCALAR is set in the environment.
const Kernels& active_kernels() noexcept;

// Buffers handed to the kernels are padded to this many bytes.
inline constexpr std::size_t kLane = 32;

inline std::size_t padded(std::size_t n) noexcept { return (n + kLane - 1) / kLane * kLane; }

} // namespace tnum::simd
