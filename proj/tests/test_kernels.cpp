#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "cyclo/kernels.hpp"

using namespace cyclo;

namespace {

// Scalar reference for sweep_row, written independently of the kernel.
std::size_t naive_sweep(const int32_t* EE, long n, long a4_lo, long o2, long o3,
                        int32_t base, int32_t thresh, int32_t* out) {
    std::size_t hits = 0;
    for (long a4 = a4_lo; a4 < n; ++a4) {
        int32_t p = base + EE[a4] + EE[a4 + o2] + EE[a4 + o3];
        if (p <= thresh) out[hits++] = static_cast<int32_t>(a4);
    }
    return hits;
}

}  // namespace

TEST_CASE("scalar kernels match a naive reference") {
    const KernelSet& ks = scalar_kernels();
    std::mt19937 rng(7);
    std::uniform_int_distribution<int32_t> val(-50, 50);

    for (long n : {1L, 2L, 7L, 16L, 33L, 100L}) {
        std::vector<int32_t> ee(2 * n);
        for (auto& v : ee) v = val(rng);
        std::vector<int32_t> got(n), want(n);
        long o2 = n / 3, o3 = n / 2;
        std::size_t hg = ks.sweep_row(ee.data(), n, 0, o2, o3, 5, 0, got.data());
        std::size_t hw = naive_sweep(ee.data(), n, 0, o2, o3, 5, 0, want.data());
        REQUIRE(hg == hw);
        for (std::size_t i = 0; i < hg; ++i) CHECK(got[i] == want[i]);
    }

    std::vector<uint8_t> runs = {0, 1, 1, 0, 1, 1, 1, 0};
    CHECK(ks.longest_nonzero_run(runs.data(), runs.size()) == 3);
    std::vector<uint8_t> zeros(64, 0);
    CHECK(ks.longest_nonzero_run(zeros.data(), zeros.size()) == 0);
    std::vector<uint8_t> ones(65, 1);
    CHECK(ks.longest_nonzero_run(ones.data(), ones.size()) == 65);
    CHECK(ks.longest_nonzero_run(ones.data(), 0) == 0);

    std::vector<double> x = {1.0, -3.5, 2.0}, y = {0.5, 1.0, -2.0};
    CHECK(ks.max_abs2(x.data(), y.data(), 3) == 2.5);
    CHECK(ks.max_abs2p1(x.data(), y.data(), 3) == 2.5);
}

TEST_CASE("simd kernels agree with scalar on random data") {
    const KernelSet* simd = simd_kernels();
    if (!simd) return;  // unsupported build or cpu

    const KernelSet& sc = scalar_kernels();
    CHECK(std::strcmp(simd->name, sc.name) != 0);

    std::mt19937 rng(12345);
    std::uniform_int_distribution<int32_t> val(-1000, 1000);
    std::uniform_real_distribution<double> dval(-4.0, 4.0);
    std::uniform_int_distribution<int> bit(0, 3);

    for (int iter = 0; iter < 200; ++iter) {
        long n = 1 + static_cast<long>(rng() % 97);
        std::vector<int32_t> ee(2 * n);
        for (auto& v : ee) v = val(rng);
        long a4_lo = static_cast<long>(rng() % n);
        long o2 = static_cast<long>(rng() % (n + 1));
        long o3 = static_cast<long>(rng() % (n + 1));
        int32_t base = val(rng), thresh = val(rng) / 2;

        std::vector<int32_t> a(n), b(n);
        std::size_t ha = sc.sweep_row(ee.data(), n, a4_lo, o2, o3, base, thresh, a.data());
        std::size_t hb = simd->sweep_row(ee.data(), n, a4_lo, o2, o3, base, thresh, b.data());
        REQUIRE(ha == hb);
        for (std::size_t i = 0; i < ha; ++i) REQUIRE(a[i] == b[i]);

        std::size_t m = 1 + rng() % 129;
        std::vector<double> x(m), y(m);
        for (auto& v : x) v = dval(rng);
        for (auto& v : y) v = dval(rng);
        // bitwise equality: both variants use only add, fabs, max
        REQUIRE(sc.max_abs2(x.data(), y.data(), m) == simd->max_abs2(x.data(), y.data(), m));
        REQUIRE(sc.max_abs2p1(x.data(), y.data(), m) == simd->max_abs2p1(x.data(), y.data(), m));

        std::vector<uint8_t> bytes(1 + rng() % 200);
        for (auto& v : bytes) v = static_cast<uint8_t>(bit(rng) == 0 ? 0 : 1);
        REQUIRE(sc.longest_nonzero_run(bytes.data(), bytes.size()) ==
                simd->longest_nonzero_run(bytes.data(), bytes.size()));
    }
}

TEST_CASE("runtime dispatch") {
    const KernelSet& ks = kernels();
    const char* force = std::getenv("CYCLO_FORCE_SCALAR");
    if (force && std::strcmp(force, "0") != 0) {
        CHECK(std::string(ks.name) == scalar_kernels().name);
        return;
    }
    // without the override the choice is simd when available, scalar otherwise
    const KernelSet* simd = simd_kernels();
    CHECK(std::string(ks.name) == (simd ? simd->name : scalar_kernels().name));

    // the forced-scalar path needs a fresh process because the choice is cached
#if defined(__linux__)
    std::string cmd = "CYCLO_FORCE_SCALAR=1 /proc/self/exe -tc='runtime dispatch' >/dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
#endif
}
