#include "tnum/simd/kernels.hpp"

#include <cstdlib>

namespace tnum::simd {

const Kernels& active_kernels() noexcept {
    static const Kernels& chosen = [] () -> const Kernels& {
        const char* force = std::getenv("TNUM_FORCE_SCALAR");
        if ((force == nullptr || *force == '\0' || *force == '0') && avx2_kernels() != nullptr) {
            return *avx2_kernels();
        }
        return scalar_kernels();
    }();
    return chosen;
}

} // namespace tnum::simd
