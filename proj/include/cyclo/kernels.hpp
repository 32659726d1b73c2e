#pragma once

#include <cstddef>
#include <cstdint>

namespace cyclo {

// Hot inner loops, provided as scalar reference implementations plus SIMD
// variants selected at runtime. Every variant must produce identical output
// (bitwise, for the floating-point kernels: only adds, fabs and max are used).
struct KernelSet {
    const char* name;

    // Threshold sweep for a doubled lookup table EE of length 2*n:
    // for a4 in [a4_lo, n), let P = base + EE[a4] + EE[a4+o2] + EE[a4+o3];
    // appends each a4 with P <= thresh to out, returns the hit count.
    std::size_t (*sweep_row)(const int32_t* EE, long n, long a4_lo, long o2, long o3,
                             int32_t base, int32_t thresh, int32_t* out);

    // max over i of |x[i] + y[i]|
    double (*max_abs2)(const double* x, const double* y, std::size_t n);
    // max over i of |1 + x[i] + y[i]|
    double (*max_abs2p1)(const double* x, const double* y, std::size_t n);

    // Length of the longest run of nonzero bytes.
    std::size_t (*longest_nonzero_run)(const uint8_t* v, std::size_t n);
};

const KernelSet& scalar_kernels();
// Null when unsupported by the build or the running CPU.
const KernelSet* simd_kernels();
// Runtime choice; honors CYCLO_FORCE_SCALAR=1.
const KernelSet& kernels();

}  // namespace cyclo
