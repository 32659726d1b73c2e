#include "cyclo/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace cyclo {
namespace {

std::size_t sweep_row_avx2(const int32_t* EE, long n, long a4_lo, long o2, long o3,
                           int32_t base, int32_t thresh, int32_t* out) {
    std::size_t hits = 0;
    long a4 = a4_lo;
    const __m256i vbase = _mm256_set1_epi32(base);
    const __m256i vthresh = _mm256_set1_epi32(thresh);
    for (; a4 + 8 <= n; a4 += 8) {
        __m256i e1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(EE + a4));
        __m256i e2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(EE + a4 + o2));
        __m256i e3 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(EE + a4 + o3));
        __m256i p = _mm256_add_epi32(_mm256_add_epi32(vbase, e1), _mm256_add_epi32(e2, e3));
        // p <= thresh  <=>  !(p > thresh)
        __m256i gt = _mm256_cmpgt_epi32(p, vthresh);
        unsigned mask = ~static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(gt))) & 0xffu;
        while (mask) {
            unsigned lane = static_cast<unsigned>(__builtin_ctz(mask));
            out[hits++] = static_cast<int32_t>(a4 + lane);
            mask &= mask - 1;
        }
    }
    for (; a4 < n; ++a4) {
        int32_t p = base + EE[a4] + EE[a4 + o2] + EE[a4 + o3];
        if (p <= thresh) out[hits++] = static_cast<int32_t>(a4);
    }
    return hits;
}

inline __m256d abs_pd(__m256d v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

inline double hmax_pd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

double max_abs2_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_max_pd(acc, abs_pd(v));
    }
    double best = hmax_pd(acc);
    for (; i < n; ++i) {
        double v = std::fabs(x[i] + y[i]);
        if (v > best) best = v;
    }
    return best;
}

double max_abs2p1_avx2(const double* x, const double* y, std::size_t n) {
    const __m256d ones = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // Matches the scalar association (1 + x[i]) + y[i] exactly.
        __m256d v = _mm256_add_pd(_mm256_add_pd(ones, _mm256_loadu_pd(x + i)),
                                  _mm256_loadu_pd(y + i));
        acc = _mm256_max_pd(acc, abs_pd(v));
    }
    double best = hmax_pd(acc);
    for (; i < n; ++i) {
        double v = std::fabs(1.0 + x[i] + y[i]);
        if (v > best) best = v;
    }
    return best;
}

std::size_t longest_nonzero_run_avx2(const uint8_t* v, std::size_t n) {
    std::size_t best = 0, run = 0;
    std::size_t i = 0;
    const __m256i zero = _mm256_setzero_si256();
    for (; i + 32 <= n; i += 32) {
        __m256i chunk = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
        unsigned zmask =
            static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(chunk, zero)));
        if (zmask == 0) {
            run += 32;
            if (run > best) best = run;
        } else if (zmask == 0xffffffffu) {
            run = 0;
        } else {
            for (unsigned b = 0; b < 32; ++b) {
                if (zmask & (1u << b)) {
                    run = 0;
                } else {
                    if (++run > best) best = run;
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

const KernelSet* avx2_kernels_impl() {
    static const KernelSet ks = {"avx2", sweep_row_avx2, max_abs2_avx2, max_abs2p1_avx2,
                                 longest_nonzero_run_avx2};
    return &ks;
}

}  // namespace cyclo

#endif  // __AVX2__
