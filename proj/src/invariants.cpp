#include "cyclo/invariants.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cyclo {

Int trace(const CycInt& b) {
    const Field& f = field(b.conductor());
    Int t = 0;
    const auto& a = b.coeffs();
    for (long e = 0; e < static_cast<long>(a.size()); ++e) {
        if (a[e] != 0) t += a[e] * Int(f.trace[e]);
    }
    return t;
}

Rat m_invariant(const CycInt& b) {
    const Field& f = field(b.conductor());
    Int t = trace(b * b.conj());
    return Rat(t, Int(f.phi));
}

namespace {

long double sum_abs_coeffs(const CycInt& b) {
    long double s = 0;
    for (const auto& v : b.coeffs()) s += boost::multiprecision::abs(v).convert_to<long double>();
    return s;
}

// One embedding magnitude at `bits` precision plus an absolute error bound.
long double mpfr_embed_abs(const CycInt& b, long k, int bits, long double& err_out) {
    long n = b.conductor();
    mpfr_t pi, ang, s, c, re, im, tmp, acc;
    mpfr_inits2(bits, pi, ang, s, c, re, im, tmp, acc, (mpfr_ptr)nullptr);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    const auto& a = b.coeffs();
    long terms = 0;
    for (long e = 0; e < static_cast<long>(a.size()); ++e) {
        if (a[e] == 0) continue;
        ++terms;
        long m = (e * k) % n;
        // ang = 2 pi m / n
        mpfr_mul_si(ang, pi, 2 * m, MPFR_RNDN);
        mpfr_div_si(ang, ang, n, MPFR_RNDN);
        mpfr_sin_cos(s, c, ang, MPFR_RNDN);
        mpfr_set_str(tmp, a[e].str().c_str(), 10, MPFR_RNDN);
        mpfr_fma(re, tmp, c, re, MPFR_RNDN);
        mpfr_fma(im, tmp, s, im, MPFR_RNDN);
    }
    mpfr_sqr(acc, re, MPFR_RNDN);
    mpfr_fma(acc, im, im, acc, MPFR_RNDN);
    mpfr_sqrt(acc, acc, MPFR_RNDN);
    long double v = mpfr_get_ld(acc, MPFR_RNDN);
    mpfr_clears(pi, ang, s, c, re, im, tmp, acc, (mpfr_ptr)nullptr);
    // Each term contributes a handful of correctly rounded operations.
    long double ulp_scale = std::ldexp(1.0L, 4 - bits);
    err_out = (static_cast<long double>(terms) + 6.0L) * sum_abs_coeffs(b) * ulp_scale;
    return v;
}

}  // namespace

HouseValue house(const CycInt& b, long double target_radius) {
    const Field& f = field(b.conductor());
    long n = b.conductor();
    const auto& a = b.coeffs();

    // Fast pass in long double.
    const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
    long double best = 0;
    for (long k : f.coprimes) {
        long double re = 0, im = 0;
        for (long e = 0; e < static_cast<long>(a.size()); ++e) {
            if (a[e] == 0) continue;
            long double ang = two_pi * static_cast<long double>((e * k) % n) / n;
            long double coef = a[e].convert_to<long double>();
            re += coef * std::cos(ang);
            im += coef * std::sin(ang);
        }
        best = std::max(best, std::sqrt(re * re + im * im));
    }
    long double err = (static_cast<long double>(f.phi) + 6.0L) * sum_abs_coeffs(b) * LDBL_EPSILON * 4.0L;
    if (err <= target_radius) return {best, err, 64};

    for (int bits = 128; bits <= 4096; bits *= 2) {
        long double worst_err = 0, mbest = 0;
        for (long k : f.coprimes) {
            long double e1 = 0;
            long double v = mpfr_embed_abs(b, k, bits, e1);
            worst_err = std::max(worst_err, e1);
            mbest = std::max(mbest, v);
        }
        if (worst_err <= target_radius) return {mbest, worst_err, bits};
    }
    throw std::runtime_error("house: target radius unreachable at 4096 bits");
}

IntPoly min_poly(const CycInt& b) {
    const Field& f = field(b.conductor());
    std::map<std::string, CycInt> orbit;
    for (long k : f.coprimes) {
        CycInt img = b.galois(k);
        orbit.emplace(img.key(), std::move(img));
    }
    // prod (x - v) with coefficients in Z[zeta]; the result is rational.
    std::vector<CycInt> poly{CycInt::from_int(1)};
    for (auto& [key, v] : orbit) {
        std::vector<CycInt> next(poly.size() + 1, CycInt::zero(b.conductor()));
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = next[i + 1] + poly[i];
            next[i] = next[i] - poly[i] * v;
        }
        poly = std::move(next);
    }
    IntPoly out;
    out.c.resize(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) {
        if (!poly[i].is_integer()) throw std::logic_error("min_poly: non-rational coefficient");
        out.c[i] = poly[i].integer_value();
    }
    out.trim();
    return out;
}

std::optional<RootWitness> n_invariant_upto(const CycInt& b, int rmax, long search_order) {
    search_order = normalize_conductor(search_order);
    long C = search_order;
    long M = normalize_conductor(lcm_long(C, b.conductor()));
    CycInt target = b.lifted(M);
    std::vector<CycInt> roots;
    roots.reserve(C);
    for (long t = 0; t < C; ++t) roots.push_back(CycInt::root_of_unity(C, t).lifted(M));

    if (target.is_zero()) return RootWitness{C, {}};

    constexpr size_t kStoreCap = 3000000;

    // All sorted multisets of size k over [0, C), visited with their sums;
    // visit returns false to stop the walk.
    std::vector<long> idx_buf;
    auto enumerate = [&](int k, auto&& visit) {
        idx_buf.assign(k, 0);
        auto rec = [&](auto&& self, int depth, long start, const CycInt& acc) -> bool {
            if (depth == k) return visit(acc, idx_buf);
            for (long t = start; t < C; ++t) {
                idx_buf[depth] = t;
                CycInt nxt = acc + roots[t];
                if (!self(self, depth + 1, t, nxt)) return false;
            }
            return true;
        };
        rec(rec, 0, 0, CycInt::zero(M));
    };

    for (int k = 1; k <= rmax; ++k) {
        if (k == 1) {
            for (long t = 0; t < C; ++t) {
                if (roots[t] == target) return RootWitness{C, {t}};
            }
            continue;
        }
        int k1 = k / 2, k2 = k - k1;
        double count_k1 = 1;
        for (int i = 0; i < k1; ++i) count_k1 = count_k1 * (C + i) / (i + 1);
        if (count_k1 > static_cast<double>(kStoreCap)) {
            throw std::runtime_error("n_invariant_upto: meet-in-the-middle store cap exceeded");
        }
        std::unordered_map<std::string, std::vector<long>> half;
        half.reserve(static_cast<size_t>(count_k1) * 2);
        enumerate(k1, [&](const CycInt& sum, const std::vector<long>& idx) {
            half.emplace(sum.key(), idx);
            return true;
        });
        std::optional<RootWitness> found;
        enumerate(k2, [&](const CycInt& sum, const std::vector<long>& idx) {
            CycInt need = target - sum;
            auto it = half.find(need.key());
            if (it != half.end()) {
                RootWitness w{C, it->second};
                w.exponents.insert(w.exponents.end(), idx.begin(), idx.end());
                std::sort(w.exponents.begin(), w.exponents.end());
                found = std::move(w);
                return false;
            }
            return true;
        });
        if (found) return found;
    }
    return std::nullopt;
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1) {
        os << "/" << boost::multiprecision::denominator(r).str();
    }
    return os.str();
}

nlohmann::ordered_json InvariantReport::to_json() const {
    nlohmann::ordered_json j;
    j["value"] = value_text;
    j["conductor"] = conductor;
    j["m"] = m_value;
    j["house"] = house_value;
    j["house_radius"] = house_radius;
    j["min_poly"] = min_poly;
    j["min_poly_coeffs"] = min_poly_coeffs;
    if (n_upper >= 0) {
        j["n_upper"] = n_upper;
        j["witness_order"] = witness_order;
        j["witness_exponents"] = witness_exponents;
    } else {
        j["n_upper"] = nullptr;
    }
    return j;
}

InvariantReport invariant_report(const CycInt& b, int rmax, long search_order,
                                 long double house_target) {
    InvariantReport r;
    CycInt red = b.reduced();
    r.value_text = red.to_text();
    r.conductor = red.conductor();
    r.m_value = rat_str(m_invariant(red));
    HouseValue h = house(red, house_target);
    r.house_value = static_cast<double>(h.value);
    r.house_radius = static_cast<double>(h.radius);
    IntPoly mp = min_poly(red);
    r.min_poly = mp.str();
    for (const auto& c : mp.c) r.min_poly_coeffs.push_back(c.convert_to<long long>());
    if (rmax > 0) {
        auto w = n_invariant_upto(red, rmax, search_order);
        if (w) {
            r.n_upper = static_cast<int>(w->exponents.size());
            r.witness_order = w->order;
            r.witness_exponents = w->exponents;
        }
    }
    return r;
}

}  // namespace cyclo
