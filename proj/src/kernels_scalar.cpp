#include "cyclo/kernels.hpp"

#include <cmath>

namespace cyclo {
namespace {

std::size_t sweep_row_scalar(const int32_t* EE, long n, long a4_lo, long o2, long o3,
                             int32_t base, int32_t thresh, int32_t* out) {
    std::size_t hits = 0;
    for (long a4 = a4_lo; a4 < n; ++a4) {
        int32_t p = base + EE[a4] + EE[a4 + o2] + EE[a4 + o3];
        if (p <= thresh) out[hits++] = static_cast<int32_t>(a4);
    }
    return hits;
}

double max_abs2_scalar(const double* x, const double* y, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::fabs(x[i] + y[i]);
        if (v > best) best = v;
    }
    return best;
}

double max_abs2p1_scalar(const double* x, const double* y, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::fabs(1.0 + x[i] + y[i]);
        if (v > best) best = v;
    }
    return best;
}

std::size_t longest_nonzero_run_scalar(const uint8_t* v, std::size_t n) {
    std::size_t best = 0, run = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i]) {
            if (++run > best) best = run;
        } else {
            run = 0;
        }
    }
    return best;
}

}  // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet ks = {"scalar", sweep_row_scalar, max_abs2_scalar,
                                 max_abs2p1_scalar, longest_nonzero_run_scalar};
    return ks;
}

}  // namespace cyclo
