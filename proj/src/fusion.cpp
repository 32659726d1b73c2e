#include "cyclo/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "cyclo/smallsums.hpp"

namespace cyclo {

namespace {

FusionRing empty_ring(long n) {
    FusionRing r;
    r.labels.resize(static_cast<std::size_t>(n));
    r.dual.assign(static_cast<std::size_t>(n), 0);
    r.tensor.assign(static_cast<std::size_t>(n),
                    std::vector<std::vector<long>>(static_cast<std::size_t>(n),
                                                   std::vector<long>(static_cast<std::size_t>(n), 0)));
    return r;
}

long& entry(FusionRing& r, long i, long j, long k) {
    return r.tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
}

bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

}  // namespace

std::vector<std::vector<Int>> FusionRing::left_matrix(long i) const {
    long n = size();
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n)));
    for (long k = 0; k < n; ++k)
        for (long j = 0; j < n; ++j)
            m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    return m;
}

nlohmann::ordered_json FusionRing::to_json() const {
    nlohmann::ordered_json j;
    j["labels"] = labels;
    j["unit"] = unit;
    j["dual"] = dual;
    // constants are flat in basis order: index (i * n + j) * n + k
    std::vector<long> flat;
    flat.reserve(static_cast<std::size_t>(size() * size() * size()));
    for (const auto& a : tensor)
        for (const auto& b : a)
            for (long v : b) flat.push_back(v);
    j["constants"] = flat;
    return j;
}

FusionRing FusionRing::from_json(const nlohmann::json& j) {
    FusionRing r;
    r.labels = j.at("labels").get<std::vector<std::string>>();
    r.unit = j.at("unit").get<long>();
    r.dual = j.at("dual").get<std::vector<long>>();
    long n = r.size();
    if (n == 0) throw std::runtime_error("fusion ring: empty basis");
    if (r.unit < 0 || r.unit >= n) throw std::runtime_error("fusion ring: unit out of range");
    if (static_cast<long>(r.dual.size()) != n) throw std::runtime_error("fusion ring: dual size mismatch");
    for (long d : r.dual)
        if (d < 0 || d >= n) throw std::runtime_error("fusion ring: dual index out of range");
    auto flat = j.at("constants").get<std::vector<long>>();
    if (static_cast<long>(flat.size()) != n * n * n)
        throw std::runtime_error("fusion ring: constants array must hold n^3 entries");
    for (long v : flat)
        if (v < 0) throw std::runtime_error("fusion ring: negative structure constant");
    r.tensor.assign(static_cast<std::size_t>(n),
                    std::vector<std::vector<long>>(static_cast<std::size_t>(n),
                                                   std::vector<long>(static_cast<std::size_t>(n), 0)));
    std::size_t idx = 0;
    for (long i = 0; i < n; ++i)
        for (long jj = 0; jj < n; ++jj)
            for (long k = 0; k < n; ++k)
                r.tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)]
                        [static_cast<std::size_t>(k)] = flat[idx++];
    return r;
}

FusionRing FusionRing::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fusion ring file: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

bool verify_axioms(const FusionRing& r, std::string* why) {
    long n = r.size();
    auto nn = [&](long i, long j, long k) {
        return r.tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    };
    for (long i = 0; i < n; ++i)
        if (r.dual[static_cast<std::size_t>(r.dual[static_cast<std::size_t>(i)])] != i)
            return fail(why, "dual is not an involution at " + r.labels[static_cast<std::size_t>(i)]);
    for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k) {
            long d = (j == k) ? 1 : 0;
            if (nn(r.unit, j, k) != d || nn(j, r.unit, k) != d)
                return fail(why, "unit does not act as identity");
        }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            long d = (j == r.dual[static_cast<std::size_t>(i)]) ? 1 : 0;
            if (nn(i, j, r.unit) != d)
                return fail(why, "unit multiplicity does not match duality at " +
                                     r.labels[static_cast<std::size_t>(i)] + ", " +
                                     r.labels[static_cast<std::size_t>(j)]);
        }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            for (long k = 0; k < n; ++k) {
                long a = nn(i, j, k);
                if (a != nn(r.dual[static_cast<std::size_t>(i)], k, j) ||
                    a != nn(k, r.dual[static_cast<std::size_t>(j)], i))
                    return fail(why, "Frobenius reciprocity fails at (" + std::to_string(i) + "," +
                                         std::to_string(j) + "," + std::to_string(k) + ")");
            }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            for (long k = 0; k < n; ++k)
                for (long l = 0; l < n; ++l) {
                    long lhs = 0, rhs = 0;
                    for (long m = 0; m < n; ++m) {
                        lhs += nn(i, j, m) * nn(m, k, l);
                        rhs += nn(j, k, m) * nn(i, m, l);
                    }
                    if (lhs != rhs)
                        return fail(why, "associativity fails at (" + std::to_string(i) + "," +
                                             std::to_string(j) + "," + std::to_string(k) + "," +
                                             std::to_string(l) + ")");
                }
    return true;
}

FusionRing cyclic_pointed_ring(long k) {
    if (k < 1) throw std::invalid_argument("cyclic_pointed_ring: k >= 1");
    FusionRing r = empty_ring(k);
    for (long a = 0; a < k; ++a) {
        r.labels[static_cast<std::size_t>(a)] = a == 0 ? "1" : "g" + std::to_string(a);
        r.dual[static_cast<std::size_t>(a)] = (k - a) % k;
        for (long b = 0; b < k; ++b) entry(r, a, b, (a + b) % k) = 1;
    }
    return r;
}

FusionRing ix_ring() {
    FusionRing r = empty_ring(4);
    r.labels = {"1", "g", "g2", "X"};
    r.dual = {0, 2, 1, 3};
    for (long a = 0; a < 3; ++a) {
        for (long b = 0; b < 3; ++b) entry(r, a, b, (a + b) % 3) = 1;
        entry(r, a, 3, 3) = 1;
        entry(r, 3, a, 3) = 1;
    }
    entry(r, 3, 3, 0) = 1;
    entry(r, 3, 3, 1) = 1;
    entry(r, 3, 3, 2) = 1;
    entry(r, 3, 3, 3) = 3;
    return r;
}

FusionRing v_ring() {
    FusionRing r = empty_ring(8);
    r.labels = {"1", "g", "g2", "X", "M", "V", "gV", "g2V"};
    r.dual = {0, 2, 1, 3, 4, 5, 6, 7};
    auto V = [](long c) { return 5 + ((c % 3) + 3) % 3; };
    for (long a = 0; a < 3; ++a) {
        for (long b = 0; b < 3; ++b) entry(r, a, b, (a + b) % 3) = 1;
        entry(r, a, 3, 3) = 1;
        entry(r, 3, a, 3) = 1;
        entry(r, a, 4, 4) = 1;
        entry(r, 4, a, 4) = 1;
        for (long c = 0; c < 3; ++c) {
            entry(r, a, V(c), V(c + a)) = 1;
            entry(r, V(c), a, V(c + 2 * a)) = 1;
        }
    }
    entry(r, 3, 3, 0) = 1;
    entry(r, 3, 3, 1) = 1;
    entry(r, 3, 3, 2) = 1;
    entry(r, 3, 3, 3) = 3;
    for (long c = 0; c < 3; ++c) {
        entry(r, 3, 4, V(c)) = 1;
        entry(r, 4, 3, V(c)) = 1;
        entry(r, 3, V(c), 4) = 1;
        entry(r, V(c), 3, 4) = 1;
        for (long d = 0; d < 3; ++d) {
            entry(r, 3, V(c), V(d)) = 1;
            entry(r, V(c), 3, V(d)) = 1;
        }
        entry(r, 4, V(c), 3) = 1;
        entry(r, V(c), 4, 3) = 1;
        for (long d = 0; d < 3; ++d) {
            entry(r, V(c), V(d), (c + 2 * d) % 3) = 1;
            entry(r, V(c), V(d), 3) = 1;
        }
    }
    entry(r, 4, 4, 0) = 1;
    entry(r, 4, 4, 1) = 1;
    entry(r, 4, 4, 2) = 1;
    return r;
}

FPDim fp_dimension(const FusionRing& r, long i) {
    if (i < 0 || i >= r.size()) throw std::invalid_argument("fp_dimension: object out of range");
    IntPoly p = char_poly_matrix(r.left_matrix(i));
    // repeated eigenvalues blur numeric roots badly; the exact squarefree part
    // keeps the root set, all simple, and still contains the minimal factor
    IntPoly sq = poly_gcd(p, p.derivative());
    if (sq.degree() > 0) {
        auto reduced = exact_div(p, sq);
        if (!reduced) throw std::logic_error("fp_dimension: squarefree reduction failed");
        p = *reduced;
    }
    auto roots = complex_roots(p);
    std::size_t imax = 0;
    double lmax = -1e300;
    for (std::size_t s = 0; s < roots.size(); ++s)
        if (std::fabs(roots[s].imag()) < 1e-8 && roots[s].real() > lmax) {
            lmax = roots[s].real();
            imax = s;
        }
    if (lmax < 0) throw std::runtime_error("fp_dimension: no nonnegative real eigenvalue");
    // minimal integer monic factor through the largest eigenvalue, found by
    // expanding root subsets and certifying with exact division
    FPDim out;
    out.value = lmax;
    std::size_t n = roots.size();
    int best_deg = p.degree() + 1;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & (1u << imax))) continue;
        int deg = __builtin_popcount(mask);
        if (deg >= best_deg) continue;
        std::vector<std::complex<long double>> cf{1.0L};
        for (std::size_t s = 0; s < n; ++s) {
            if (!(mask & (1u << s))) continue;
            std::complex<long double> z(roots[s].real(), roots[s].imag());
            cf.push_back(0.0L);
            for (std::size_t t = cf.size() - 1; t > 0; --t) cf[t] = cf[t - 1] - z * cf[t];
            cf[0] = -z * cf[0];
        }
        std::vector<Int> ic(cf.size());
        bool integral = true;
        for (std::size_t t = 0; t < cf.size() && integral; ++t) {
            long double re = cf[t].real();
            long long rr = static_cast<long long>(llroundl(re));
            if (std::fabs(re - static_cast<long double>(rr)) > 1e-3L || std::fabs(cf[t].imag()) > 1e-3L)
                integral = false;
            ic[t] = rr;
        }
        if (!integral) continue;
        IntPoly cand(ic);
        if (cand.degree() != deg || cand.lead() != 1) continue;
        if (!exact_div(p, cand)) continue;
        out.minpoly = cand;
        best_deg = deg;
    }
    if (out.minpoly.is_zero()) throw std::runtime_error("fp_dimension: no integer factor matched");
    // repeated eigenvalues blur the char poly roots; the certified minpoly has
    // simple roots, so its largest real root pins the value at full precision
    out.value = -1e300;
    for (double rr : real_roots(out.minpoly)) out.value = std::max(out.value, rr);
    return out;
}

namespace {

// m with x -> -x, normalized to positive lead
IntPoly negate_variable(const IntPoly& m) {
    std::vector<Int> c = m.c;
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    IntPoly out(c);
    if (out.lead() < 0) out = out * Int(-1);
    return out;
}

bool totally_real_above(const IntPoly& m, double floor_value) {
    auto roots = complex_roots(m);
    for (const auto& z : roots) {
        if (std::fabs(z.imag()) > 1e-8) return false;
        if (z.real() < floor_value) return false;
    }
    return true;
}

const std::vector<IntPoly>& admitted_shift_minpolys() {
    static const std::vector<IntPoly> list = [] {
        EnumerationScope sc;
        sc.six_term_13 = true;
        std::vector<IntPoly> keep;
        for (const auto& v : classify_interval(2.0, 76.0 / 33.0, sc)) {
            // stored minpolys are normalized up to sign; pick the branch that
            // annihilates the positive house value itself
            IntPoly m = v.min_poly;
            IntPoly f = negate_variable(m);
            long double h = static_cast<long double>(v.house);
            if (std::fabs(static_cast<double>(m.eval_ld(h))) >
                std::fabs(static_cast<double>(f.eval_ld(h))))
                m = f;
            if (totally_real_above(m, -2.0 - 1e-9)) keep.push_back(m);
        }
        return keep;
    }();
    return list;
}

}  // namespace

IndexVerdict index_classify(const IntPoly& alpha_minpoly) {
    if (alpha_minpoly.degree() < 1) throw std::domain_error("index window: constant polynomial");
    double alpha = -1e300;
    for (double r : real_roots(alpha_minpoly)) alpha = std::max(alpha, r);
    const double hi = 4.0 + 10.0 / 33.0;
    if (alpha <= 4.0 || alpha >= hi) throw std::domain_error("index outside the window (4, 4 + 10/33)");
    IndexVerdict out;
    out.alpha = alpha;
    if (alpha_minpoly.lead() != 1) {
        out.reason = "index is not an algebraic integer";
        return out;
    }
    out.beta_minpoly = alpha_minpoly.shifted(2);
    if (!totally_real_above(out.beta_minpoly, -2.0 - 1e-9)) {
        out.reason = "a conjugate of index - 2 is complex or falls below -2";
        return out;
    }
    for (const IntPoly& m : admitted_shift_minpolys())
        if (m == out.beta_minpoly) {
            out.cls = IndexClass::Allowed;
            out.reason = "index - 2 is an admitted interval value";
            return out;
        }
    out.reason = "index - 2 is not among the admitted interval values";
    return out;
}

}  // namespace cyclo
