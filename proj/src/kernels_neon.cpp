#include "cyclo/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <cmath>

namespace cyclo {
namespace {

std::size_t sweep_row_neon(const int32_t* EE, long n, long a4_lo, long o2, long o3,
                           int32_t base, int32_t thresh, int32_t* out) {
    std::size_t hits = 0;
    long a4 = a4_lo;
    const int32x4_t vbase = vdupq_n_s32(base);
    const int32x4_t vthresh = vdupq_n_s32(thresh);
    for (; a4 + 4 <= n; a4 += 4) {
        int32x4_t e1 = vld1q_s32(EE + a4);
        int32x4_t e2 = vld1q_s32(EE + a4 + o2);
        int32x4_t e3 = vld1q_s32(EE + a4 + o3);
        int32x4_t p = vaddq_s32(vaddq_s32(vbase, e1), vaddq_s32(e2, e3));
        uint32x4_t le = vcleq_s32(p, vthresh);
        uint32_t lanes[4];
        vst1q_u32(lanes, le);
        for (int b = 0; b < 4; ++b) {
            if (lanes[b]) out[hits++] = static_cast<int32_t>(a4 + b);
        }
    }
    for (; a4 < n; ++a4) {
        int32_t p = base + EE[a4] + EE[a4 + o2] + EE[a4 + o3];
        if (p <= thresh) out[hits++] = static_cast<int32_t>(a4);
    }
    return hits;
}

double max_abs2_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vaddq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
        acc = vmaxq_f64(acc, vabsq_f64(v));
    }
    double best = vmaxvq_f64(acc);
    for (; i < n; ++i) {
        double v = std::fabs(x[i] + y[i]);
        if (v > best) best = v;
    }
    return best;
}

double max_abs2p1_neon(const double* x, const double* y, std::size_t n) {
    const float64x2_t ones = vdupq_n_f64(1.0);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // Matches the scalar association (1 + x[i]) + y[i] exactly.
        float64x2_t v = vaddq_f64(vaddq_f64(ones, vld1q_f64(x + i)), vld1q_f64(y + i));
        acc = vmaxq_f64(acc, vabsq_f64(v));
    }
    double best = vmaxvq_f64(acc);
    for (; i < n; ++i) {
        double v = std::fabs(1.0 + x[i] + y[i]);
        if (v > best) best = v;
    }
    return best;
}

std::size_t longest_nonzero_run_neon(const uint8_t* v, std::size_t n) {
    std::size_t best = 0, run = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t chunk = vld1q_u8(v + i);
        uint8x16_t nz = vtstq_u8(chunk, chunk);
        if (vminvq_u8(nz) == 0xff) {
            run += 16;
            if (run > best) best = run;
        } else if (vmaxvq_u8(nz) == 0) {
            run = 0;
        } else {
            uint8_t lanes[16];
            vst1q_u8(lanes, nz);
            for (int b = 0; b < 16; ++b) {
                if (lanes[b]) {
                    if (++run > best) best = run;
                } else {
                    run = 0;
                }
            }
        }
    }
    for (; i < n; ++i) {
        if (v[i]) {
            if (++run > best) best = run;
        } else {
            run = 0;
        }
    }
    return best;
}

}  // namespace

const KernelSet* neon_kernels_impl() {
    static const KernelSet ks = {"neon", sweep_row_neon, max_abs2_neon, max_abs2p1_neon,
                                 longest_nonzero_run_neon};
    return &ks;
}

}  // namespace cyclo

#endif  // __aarch64__ && __ARM_NEON
