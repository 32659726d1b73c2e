#include "cyclo/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace cyclo {

#if defined(CYCLO_HAVE_AVX2_BUILD)
const KernelSet* avx2_kernels_impl();
#endif
#if defined(__aarch64__) && defined(__ARM_NEON)
const KernelSet* neon_kernels_impl();
#endif

const KernelSet* simd_kernels() {
#if defined(CYCLO_HAVE_AVX2_BUILD)
    if (__builtin_cpu_supports("avx2")) return avx2_kernels_impl();
#endif
#if defined(__aarch64__) && defined(__ARM_NEON)
    return neon_kernels_impl();
#endif
    return nullptr;
}

const KernelSet& kernels() {
    static const KernelSet* chosen = [] {
        const char* force = std::getenv("CYCLO_FORCE_SCALAR");
        if (force && std::strcmp(force, "0") != 0) return &scalar_kernels();
        const KernelSet* simd = simd_kernels();
        return simd ? simd : &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace cyclo
