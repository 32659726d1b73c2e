#include "cyclo/smallsums.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "cyclo/kernels.hpp"

namespace cyclo {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

std::vector<long> coprime_residues(long n) {
    std::vector<long> ks;
    for (long k = 1; k <= n; ++k) {
        if (gcd_long(k, n) == 1) ks.push_back(k % n == 0 ? 0 : k);
    }
    if (n == 1) ks = {0};
    return ks;
}

CycInt root(long order, long exp) { return CycInt::root_of_unity(order, exp); }

}  // namespace

// ---- sums of roots of unity ----

CycInt RootSum::value() const {
    CycInt acc = CycInt::zero(1);
    for (const auto& t : terms) {
        CycInt r = root(t.order, t.exponent);
        acc = t.sign >= 0 ? acc + r : acc - r;
    }
    return acc;
}

long RootSum::term_lcm() const {
    long l = 1;
    for (const auto& t : terms) l = lcm_long(l, t.order);
    return l;
}

std::string RootSum::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (t.sign >= 0) {
            if (!first) os << " + ";
        } else {
            os << (first ? "-" : " - ");
        }
        long e = ((t.exponent % t.order) + t.order) % t.order;
        if (t.order == 1 || e == 0) {
            os << "1";
        } else {
            os << "z" << t.order;
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

bool is_vanishing(const RootSum& s) { return s.value().is_zero(); }

bool is_primitive_vanishing(const RootSum& s) {
    std::size_t n = s.terms.size();
    if (n > 12) throw std::invalid_argument("subset check limited to 12 terms");
    if (n == 0 || !is_vanishing(s)) return false;
    std::vector<CycInt> vals;
    vals.reserve(n);
    for (const auto& t : s.terms) {
        CycInt r = root(t.order, t.exponent);
        vals.push_back(t.sign >= 0 ? r : CycInt::zero(1) - r);
    }
    // A proper subsum and its complement vanish together, so masks with the
    // first term fixed cover every split.
    for (unsigned mask = 1; mask + 1 < (1u << n); mask += 2) {
        CycInt sum = CycInt::zero(1);
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) sum = sum + vals[i];
        }
        if (mask + 1 < (1u << n) && sum.is_zero()) return false;
    }
    return true;
}

std::vector<RootSum> vanishing_table() {
    auto Z = [](long n, long e) { return RootTerm{n, e, 1}; };
    std::vector<RootSum> t;
    t.push_back({Z(1, 0), Z(2, 1)});
    t.push_back({Z(6, 1), Z(6, 5), Z(5, 1), Z(5, 2), Z(5, 3), Z(5, 4)});
    t.push_back({Z(6, 1), Z(6, 5), Z(7, 1), Z(7, 2), Z(7, 3), Z(7, 4), Z(7, 5), Z(7, 6)});
    t.push_back({Z(6, 1), Z(6, 5), Z(30, 1), Z(30, 7), Z(30, 11), Z(30, 17), Z(30, 18),
                 Z(30, 24)});
    t.push_back({Z(6, 1), Z(6, 5), Z(30, 1), Z(30, 11), Z(30, 12), Z(30, 13), Z(30, 23),
                 Z(30, 24)});
    t.push_back({Z(7, 1), Z(7, 2), Z(7, 3), Z(7, 4), Z(7, 5), Z(7, 6), Z(10, 1), Z(10, 3),
                 Z(10, 7), Z(10, 9)});
    t.push_back({Z(1, 0), Z(3, 1), Z(7, 1), Z(7, 2), Z(21, 10), Z(21, 13), Z(42, 1), Z(42, 25),
                 Z(42, 31), Z(42, 37)});
    t.push_back({Z(1, 0), Z(3, 1), Z(7, 1), Z(7, 3), Z(21, 10), Z(21, 16), Z(42, 1), Z(42, 19),
                 Z(42, 31), Z(42, 37)});
    t.push_back({Z(1, 0), Z(3, 1), Z(7, 1), Z(7, 4), Z(21, 10), Z(21, 19), Z(42, 1), Z(42, 19),
                 Z(42, 25), Z(42, 37)});
    t.push_back({Z(1, 0), Z(3, 1), Z(7, 1), Z(7, 5), Z(21, 1), Z(21, 10), Z(42, 1), Z(42, 19),
                 Z(42, 25), Z(42, 31)});
    t.push_back({Z(1, 0), Z(3, 1), Z(7, 2), Z(7, 4), Z(21, 13), Z(21, 19), Z(42, 1), Z(42, 13),
                 Z(42, 25), Z(42, 37)});
    return t;
}

FourTermScanResult four_term_vanishing_scan(long conductor) {
    long L = conductor;
    if (L < 1 || L > 2000) throw std::invalid_argument("conductor out of range");
    std::vector<std::complex<double>> W(L);
    for (long e = 0; e < L; ++e) {
        double th = 2.0 * (double)kPi * (double)e / (double)L;
        W[e] = {std::cos(th), std::sin(th)};
    }
    FourTermScanResult res;
    res.conductor = L;
    CycInt one = CycInt::from_int(1);
    for (long a = 0; a < L; ++a) {
        for (long b = a; b < L; ++b) {
            std::complex<double> sab = 1.0 + W[a] + W[b];
            for (long c = b; c < L; ++c) {
                std::complex<double> s = sab + W[c];
                if (std::norm(s) >= 1e-8) continue;
                CycInt ra = root(L, a), rb = root(L, b), rc = root(L, c);
                if (!(one + ra + rb + rc).is_zero()) continue;
                ++res.vanishing;
                // Given a vanishing total, a proper subsum vanishes iff some
                // 2+2 split does; triples force a vanishing single.
                bool split = (one + ra).is_zero() || (one + rb).is_zero() ||
                             (one + rc).is_zero() || (ra + rb).is_zero() ||
                             (ra + rc).is_zero() || (rb + rc).is_zero();
                if (!split) ++res.primitive;
            }
        }
    }
    return res;
}

// ---- exceptional orbits ----

namespace {

struct ExoticOrbit {
    CycInt base = CycInt::zero(1);
    std::map<std::string, long> keys;             // reduced key -> Galois witness
    std::vector<std::pair<CycInt, long>> values;  // distinct conjugates
};

ExoticOrbit make_orbit(const CycInt& v) {
    ExoticOrbit o;
    o.base = v.reduced();
    const Field& f = field(o.base.conductor());
    for (long k : f.coprimes) {
        CycInt g = o.base.galois(k);
        auto [it, fresh] = o.keys.emplace(g.key(), k);
        if (fresh) o.values.push_back({g, k});
    }
    return o;
}

CycInt sum84(std::initializer_list<long> exps) {
    CycInt acc = CycInt::zero(1);
    for (long e : exps) acc = acc + root(84, e);
    return acc;
}

const CycInt& eta_value() {
    static const CycInt v = (root(12, 1) + root(20, 1) + root(20, 17)).reduced();
    return v;
}

const ExoticOrbit& eta_orbit() {
    static const ExoticOrbit o = make_orbit(eta_value());
    return o;
}
const ExoticOrbit& quartet_wide_orbit() {
    static const ExoticOrbit o = make_orbit(sum84({75, 77, 3, 15}));
    return o;
}
const ExoticOrbit& quartet_narrow_orbit() {
    static const ExoticOrbit o = make_orbit(sum84({75, 77, 3, 27}));
    return o;
}
const ExoticOrbit& quintet_wide_orbit() {
    static const ExoticOrbit o = make_orbit(sum84({75, 77, 1, 3, 13}));
    return o;
}
const ExoticOrbit& quintet_narrow_orbit() {
    static const ExoticOrbit o = make_orbit(sum84({75, 77, 15, 25, 73}));
    return o;
}

std::optional<long> orbit_match(const ExoticOrbit& o, const CycInt& w) {
    CycInt r = w.reduced();
    if (r.conductor() != o.base.conductor()) return std::nullopt;
    auto it = o.keys.find(r.key());
    if (it == o.keys.end()) return std::nullopt;
    return it->second;
}

// ---- witness searches for the paired-cosine forms ----

std::optional<std::pair<long, long>> find_cos_pair(const CycInt& target, long order_bound) {
    long double tr = std::real(target.embed());
    if (std::fabs((double)std::imag(target.embed())) > 1e-9) return std::nullopt;
    for (long d : divisors(order_bound)) {
        for (long a = 0; a <= d / 2; ++a) {
            long double c = 2.0L * std::cos(2.0L * kPi * (long double)a / (long double)d);
            if (std::fabs((double)(c - tr)) > 1e-9) continue;
            if (root(d, a) + root(d, -a) == target) return std::make_pair(d, a);
        }
    }
    return std::nullopt;
}

std::optional<std::tuple<long, long, long>> find_two_pairs(const CycInt& target,
                                                           long order_bound) {
    double tr = (double)std::real(target.embed());
    if (std::fabs((double)std::imag(target.embed())) > 1e-9) return std::nullopt;
    for (long d : divisors(order_bound)) {
        long m = d / 2;
        std::vector<double> cv(m + 1);
        for (long a = 0; a <= m; ++a) cv[a] = 2.0 * std::cos(2.0 * (double)kPi * a / d);
        std::vector<long> idx(m + 1);
        for (long a = 0; a <= m; ++a) idx[a] = a;
        std::sort(idx.begin(), idx.end(), [&](long x, long y) { return cv[x] < cv[y]; });
        std::vector<double> sorted(m + 1);
        for (long i = 0; i <= m; ++i) sorted[i] = cv[idx[i]];
        for (long a = 0; a <= m; ++a) {
            double need = tr - cv[a];
            auto lo = std::lower_bound(sorted.begin(), sorted.end(), need - 1e-9);
            for (auto it = lo; it != sorted.end() && *it <= need + 1e-9; ++it) {
                long b = idx[it - sorted.begin()];
                if (b < a) continue;
                CycInt cand = root(d, a) + root(d, -a) + root(d, b) + root(d, -b);
                if (cand == target) return std::make_tuple(d, a, b);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

RealForm real_form_of(const RootSum& s) {
    CycInt v = s.value().reduced();
    if (v.is_zero()) throw std::invalid_argument("zero sum has no real form");
    if (!v.is_real()) throw std::invalid_argument("sum is not real");
    long L2 = 2 * lcm_long(2, s.term_lcm());
    const CycInt one = CycInt::from_int(1);
    auto oriented = [&](int sg) { return sg == 1 ? v : CycInt::zero(1) - v; };

    // level 1: the value itself is a root of unity
    if (v.is_integer()) {
        Int iv = v.integer_value();
        if (iv == 1) return {1, 0, "root of unity", 1, 1, 0, 0, 0};
        if (iv == -1) return {1, 0, "root of unity", -1, 1, 0, 0, 0};
    }

    // level 2: one cosine pair
    for (int sg : {1, -1}) {
        if (auto p = find_cos_pair(oriented(sg), L2))
            return {2, 0, "cosine pair", sg, p->first, p->second, 0, 0};
    }

    // level 3: cosine pair plus one, then the degree-8 orbit
    for (int sg : {1, -1}) {
        if (auto p = find_cos_pair(oriented(sg) - one, L2))
            return {3, 0, "cosine pair plus one", sg, p->first, p->second, 0, 0};
    }
    for (int sg : {1, -1}) {
        if (auto k = orbit_match(eta_orbit(), oriented(sg)))
            return {6, 0, "exotic degree-8 orbit", sg, 0, 0, 0, *k};
    }

    // level 4: two cosine pairs, then the exotic quartets
    for (int sg : {1, -1}) {
        if (auto p = find_two_pairs(oriented(sg), L2))
            return {4, 0, "two cosine pairs", sg, std::get<0>(*p), std::get<1>(*p),
                    std::get<2>(*p), 0};
    }
    for (int sg : {1, -1}) {
        if (auto k = orbit_match(quartet_wide_orbit(), oriented(sg)))
            return {7, 'a', "wide exotic quartet", sg, 0, 0, 0, *k};
        if (auto k = orbit_match(quartet_narrow_orbit(), oriented(sg)))
            return {7, 'b', "narrow exotic quartet", sg, 0, 0, 0, *k};
        if (auto k = orbit_match(eta_orbit(), oriented(sg) - one))
            return {7, 'c', "exotic degree-8 orbit plus one", sg, 0, 0, 0, *k};
    }

    // level 5: two pairs plus one, then the remaining exotic forms
    for (int sg : {1, -1}) {
        if (auto p = find_two_pairs(oriented(sg) - one, L2))
            return {5, 0, "two cosine pairs plus one", sg, std::get<0>(*p), std::get<1>(*p),
                    std::get<2>(*p), 0};
    }
    long L2e = lcm_long(L2, 120);
    for (int sg : {1, -1}) {
        for (const auto& [w, k] : eta_orbit().values) {
            if (auto p = find_cos_pair(oriented(sg) - w, L2e))
                return {8, 'a', "exotic degree-8 orbit plus cosine pair", sg, p->first,
                        p->second, 0, k};
        }
    }
    for (int sg : {1, -1}) {
        if (auto k = orbit_match(quartet_wide_orbit(), oriented(sg) - one))
            return {8, 'b', "wide exotic quartet plus one", sg, 0, 0, 0, *k};
        if (auto k = orbit_match(quartet_narrow_orbit(), oriented(sg) - one))
            return {8, 'c', "narrow exotic quartet plus one", sg, 0, 0, 0, *k};
    }
    for (int sg : {1, -1}) {
        if (auto k = orbit_match(quintet_wide_orbit(), oriented(sg)))
            return {8, 'd', "wide exotic quintet", sg, 0, 0, 0, *k};
        if (auto k = orbit_match(quintet_narrow_orbit(), oriented(sg)))
            return {8, 'e', "narrow exotic quintet", sg, 0, 0, 0, *k};
    }
    throw std::domain_error("no real form matched: " + v.to_text());
}

// ---- house enumeration ----

namespace {

struct OrbitRec {
    CycInt canon = CycInt::zero(1);            // lex-min key over sign and conjugation
    std::vector<CycInt> members;               // the full signed orbit, reduced conductor
    std::map<long, std::set<std::string>> keys_at;  // member keys lifted per conductor
    HouseValue hv;
    std::string tag;
};

class OrbitCollector {
  public:
    OrbitCollector(double lo, double hi) : lo_(lo), hi_(hi) {}

    // Certifies the house against the open interval, then merges the value
    // into its signed Galois orbit. First-seen tag wins.
    void offer(const CycInt& v, const std::string& tag) {
        HouseValue h = house(v);
        if (!((double)(h.value - h.radius) > lo_ && (double)(h.value + h.radius) < hi_))
            return;
        long long hk = llround((double)h.value * 1e8);
        for (long long probe = hk - 1; probe <= hk + 1; ++probe) {
            auto bit = buckets_.find(probe);
            if (bit == buckets_.end()) continue;
            for (std::size_t i : bit->second) {
                if (member_of(orbits_[i], v)) return;
            }
        }
        OrbitRec rec;
        rec.hv = h;
        rec.tag = tag;
        CycInt r = v.reduced();
        long C = r.conductor();
        const Field& f = field(C);
        std::string bestk;
        for (long k : f.coprimes) {
            CycInt g = r.galois(k);
            CycInt gn = CycInt::zero(1) - g;
            for (const CycInt* cand : {&g, &gn}) {
                std::string key = cand->key();
                if (rec.keys_at[C].insert(key).second) rec.members.push_back(*cand);
                if (bestk.empty() || key < bestk) {
                    bestk = key;
                    rec.canon = *cand;
                }
            }
        }
        buckets_[hk].push_back(orbits_.size());
        orbits_.push_back(std::move(rec));
    }

    std::vector<ClassifiedValue> finish() {
        std::vector<ClassifiedValue> out;
        for (const auto& rec : orbits_) {
            ClassifiedValue cv;
            cv.house = (double)rec.hv.value;
            cv.house_radius = (double)rec.hv.radius;
            cv.exact = rec.canon;
            cv.form_tag = rec.tag;
            cv.min_poly = min_poly(rec.canon);
            out.push_back(std::move(cv));
        }
        std::sort(out.begin(), out.end(), [](const ClassifiedValue& a, const ClassifiedValue& b) {
            if (a.house != b.house) return a.house < b.house;
            return a.exact.key() < b.exact.key();
        });
        return out;
    }

  private:
    bool member_of(OrbitRec& rec, const CycInt& v) {
        long m = common_conductor(v, rec.canon);
        auto it = rec.keys_at.find(m);
        if (it == rec.keys_at.end()) {
            std::set<std::string> lifted;
            for (const CycInt& w : rec.members) lifted.insert(w.lifted(m).key());
            it = rec.keys_at.emplace(m, std::move(lifted)).first;
        }
        return it->second.count(v.lifted(m).key()) > 0;
    }

    double lo_, hi_;
    std::vector<OrbitRec> orbits_;
    std::map<long long, std::vector<std::size_t>> buckets_;
};

}  // namespace

std::vector<ClassifiedValue> enumerate_real_forms(const EnumerationScope& scope, double lo,
                                                  double hi) {
    if (!(lo < hi)) throw std::invalid_argument("empty interval");
    if (scope.max_conductor < 1 || scope.max_conductor > 1000)
        throw std::invalid_argument("conductor cap out of range");
    long cap = scope.max_conductor;
    std::vector<long> conductors;
    for (long n = 1; n <= scope.max_conductor; ++n) conductors.push_back(n);
    for (long n : scope.extra_conductors) {
        if (n > scope.max_conductor) conductors.push_back(n);
        cap = std::max(cap, n);
    }

    OrbitCollector coll(lo, hi);
    const double slack = 1e-7;
    const KernelSet& K = kernels();

    auto offer_exps = [&](long N, const std::vector<long>& exps, const std::string& tag) {
        CycInt v = CycInt::zero(1);
        for (long e : exps) v = v + root(N, e);
        coll.offer(v, tag);
    };

    if (scope.pairs || scope.pairs_plus_one || scope.two_pairs || scope.two_pairs_plus_one) {
        for (long N : conductors) {
            long phi = 0;
            std::vector<long> ks = coprime_residues(N);
            phi = (long)ks.size();
            std::vector<double> cos2(N);
            for (long t = 0; t < N; ++t)
                cos2[t] = 2.0 * std::cos(2.0 * (double)kPi * (double)t / (double)N);
            long half = N / 2;
            std::vector<std::vector<double>> rows(half + 1, std::vector<double>(phi));
            for (long t = 0; t <= half; ++t) {
                for (long i = 0; i < phi; ++i) rows[t][i] = cos2[(t * ks[i]) % N];
            }
            std::vector<double> zero_row(phi, 0.0);
            // Same-conductor duplicates collapse on the exponent orbit; the
            // collector handles cross-conductor merging.
            std::set<std::vector<long>> seen;
            auto canon_exps = [&](std::vector<long> exps) {
                std::vector<long> best;
                for (long k : ks) {
                    std::vector<long> cur;
                    cur.reserve(exps.size());
                    long kk = k == 0 ? 1 : k;
                    for (long e : exps) cur.push_back((e * kk) % N);
                    std::sort(cur.begin(), cur.end());
                    if (best.empty() || cur < best) best = cur;
                }
                return best;
            };
            auto try_cand = [&](double h, std::vector<long> exps, const char* fmt, long a,
                                long b) {
                if (!(h > lo + slack && h < hi + slack)) return;
                std::vector<long> key = canon_exps(exps);
                if (!seen.insert(key).second) return;
                std::ostringstream tag;
                tag << fmt << " n=" << N << " a=" << a;
                if (b >= 0) tag << " b=" << b;
                offer_exps(N, exps, tag.str());
            };
            for (long a = 0; a <= half; ++a) {
                if (scope.pairs) {
                    double h = K.max_abs2(rows[a].data(), zero_row.data(), phi);
                    try_cand(h, {a, (N - a) % N}, "pair", a, -1);
                }
                if (scope.pairs_plus_one) {
                    double h = K.max_abs2p1(rows[a].data(), zero_row.data(), phi);
                    try_cand(h, {0, a, (N - a) % N}, "pair+1", a, -1);
                }
                if (scope.two_pairs || scope.two_pairs_plus_one) {
                    for (long b = a; b <= half; ++b) {
                        if (scope.two_pairs) {
                            double h = K.max_abs2(rows[a].data(), rows[b].data(), phi);
                            try_cand(h, {a, (N - a) % N, b, (N - b) % N}, "two-pair", a, b);
                        }
                        if (scope.two_pairs_plus_one) {
                            double h = K.max_abs2p1(rows[a].data(), rows[b].data(), phi);
                            try_cand(h, {0, a, (N - a) % N, b, (N - b) % N}, "two-pair+1", a,
                                     b);
                        }
                    }
                }
            }
        }
    }

    if (scope.eta_plus_pair) {
        const ExoticOrbit& eo = eta_orbit();
        std::vector<std::pair<double, std::size_t>> wvals;
        for (std::size_t j = 0; j < eo.values.size(); ++j)
            wvals.push_back({(double)std::real(eo.values[j].first.embed()), j});
        for (long T = 1; T <= cap; ++T) {
            if (lcm_long(60, T) > cap) continue;
            for (long c = 0; c <= T / 2; ++c) {
                double pv = 2.0 * std::cos(2.0 * (double)kPi * (double)c / (double)T);
                for (auto& [wnum, j] : wvals) {
                    for (int sg : {1, -1}) {
                        double vnum = std::fabs(wnum + sg * pv);
                        if (!(vnum > lo + slack && vnum < hi + slack)) continue;
                        CycInt pairv = root(T, c) + root(T, -c);
                        CycInt v = sg == 1 ? eo.values[j].first + pairv
                                           : eo.values[j].first - pairv;
                        std::ostringstream tag;
                        tag << "eta+pair k=" << eo.values[j].second << " n=" << T
                            << " c=" << c << " s=" << (sg == 1 ? "+" : "-");
                        coll.offer(v, tag.str());
                    }
                }
            }
        }
    }

    if (scope.exceptional) {
        const CycInt one = CycInt::from_int(1);
        coll.offer(eta_value(), "eta-orbit");
        coll.offer(quartet_wide_orbit().base, "quartet-wide");
        coll.offer(quartet_narrow_orbit().base, "quartet-narrow");
        coll.offer(eta_value() + one, "eta-orbit+1");
        coll.offer(quartet_wide_orbit().base + one, "quartet-wide+1");
        coll.offer(quartet_narrow_orbit().base + one, "quartet-narrow+1");
        coll.offer(quintet_wide_orbit().base, "quintet-wide");
        coll.offer(quintet_narrow_orbit().base, "quintet-narrow");
    }

    if (scope.six_term_13) coll.offer(half_one_plus_sqrt(13), "six-term-sqrt13");

    return coll.finish();
}

std::vector<ClassifiedValue> classify_interval(double lo, double hi,
                                               const EnumerationScope& scope) {
    return enumerate_real_forms(scope, lo, hi);
}

// ---- Jacobsthal function ----

long jacobsthal(long m_modulus) {
    if (m_modulus < 1) throw std::invalid_argument("modulus must be positive");
    long R = radical(m_modulus);
    static std::map<long, long> cache;
    auto it = cache.find(R);
    if (it != cache.end()) return it->second;
    long j;
    if (R == 1) {
        j = 1;
    } else {
        static thread_local std::vector<uint8_t> v;
        v.assign(2 * R, 0);
        for (auto& [p, e] : factorize(R)) {
            for (long i = 0; i < 2 * R; i += p) v[i] = 1;
        }
        // The doubled window catches runs across one period boundary; no run
        // reaches length R because 1 + kR stays coprime.
        j = (long)kernels().longest_nonzero_run(v.data(), v.size()) + 1;
    }
    cache.emplace(R, j);
    return j;
}

long jacobsthal_progression(long m_modulus, long step) {
    long M = m_modulus;
    if (M < 1 || M > 10000) throw std::invalid_argument("modulus out of range");
    long s = ((step % M) + M) % M;
    if (gcd_long(s == 0 ? M : s, M) != 1) throw std::invalid_argument("step not coprime");
    if (M == 1) return 1;
    std::vector<uint8_t> v(2 * M, 0);
    for (long i = 0; i < 2 * M; ++i) {
        v[i] = gcd_long((i * s) % M, M) > 1 ? 1 : 0;
    }
    return (long)kernels().longest_nonzero_run(v.data(), v.size()) + 1;
}

std::vector<long> jacobsthal_exceptions(long bound) {
    std::vector<long> out;
    for (long M = 1; M <= bound; ++M) {
        long j = jacobsthal(M);
        if (5 * j + 5 > 2 * M) out.push_back(M);
    }
    return out;
}

long kanold_violations(long nmax) {
    if (nmax < 1 || nmax > 200000) throw std::invalid_argument("bound out of range");
    long count = 0;
    for (long R = 1; R <= nmax; ++R) {
        if (moebius(R) == 0) continue;
        if (jacobsthal(R) > (1L << omega(R))) ++count;
    }
    return count;
}

// ---- certified log-barrier minimum ----

namespace {

double theta_eval(double x) {
    double q = (x - 7.0) * x + 9.0;
    return 120.0 * (23.0 / 6.0 - x) - 36.0 * std::log(std::fabs(x - 4.0)) -
           160.0 * std::log(std::fabs(x - 5.0)) - 9.0 * std::log(std::fabs(x - 3.0)) -
           2.0 * std::log(std::fabs(q));
}

struct LogTerm {
    double k;  // weight of -k*log|x - c|
    double c;
};

const LogTerm kLinTerms[3] = {{36.0, 4.0}, {160.0, 5.0}, {9.0, 3.0}};

double quad_max_abs(double a, double b) {
    auto q = [](double x) { return std::fabs((x - 7.0) * x + 9.0); };
    double m = std::max(q(a), q(b));
    if (a < 3.5 && 3.5 < b) m = std::max(m, q(3.5));
    return m;
}

// Lower bound of theta over [a,b]; valid only away from the singular points.
double segment_lower(double a, double b) {
    double bound = 120.0 * (23.0 / 6.0 - b);
    for (const auto& t : kLinTerms) {
        double dmax = std::max(std::fabs(a - t.c), std::fabs(b - t.c));
        bound -= t.k * std::log(dmax);
    }
    bound -= 2.0 * std::log(quad_max_abs(a, b));
    return bound - 1e-9;
}

// Lower bound of theta over the radius-delta ball at singular point c,
// clipped to [0, dom_hi].
double ball_lower(double c, double delta, double dom_hi, bool quad_root) {
    double a = std::max(0.0, c - delta), b = std::min(dom_hi, c + delta);
    double bound = 120.0 * (23.0 / 6.0 - b);
    for (const auto& t : kLinTerms) {
        if (std::fabs(t.c - c) < 1e-9) {
            bound -= t.k * std::log(delta);
        } else {
            bound -= t.k * std::log(std::max(std::fabs(a - t.c), std::fabs(b - t.c)));
        }
    }
    if (quad_root) {
        double other = std::sqrt(13.0);  // distance between the two quad roots
        bound -= 2.0 * std::log(delta * (other + delta));
    } else {
        bound -= 2.0 * std::log(quad_max_abs(a, b));
    }
    return bound - 1e-9;
}

}  // namespace

IntPoly theta_critical_quintic() {
    IntPoly f3 = IntPoly::from_ints({-3, 1});
    IntPoly f4 = IntPoly::from_ints({-4, 1});
    IntPoly f5 = IntPoly::from_ints({-5, 1});
    IntPoly q = IntPoly::from_ints({9, -7, 1});
    IntPoly D = f4 * f5 * f3 * q;
    IntPoly dnum = D * Int(-120) - (f5 * f3 * q) * Int(36) - (f4 * f3 * q) * Int(160) -
                   (f4 * f5 * q) * Int(9) - (f4 * f5 * f3) * IntPoly::from_ints({-14, 4});
    IntPoly quint = -dnum;
    // Cross-check the symbolic numerator against the analytic derivative.
    for (double x0 : {0.5, 1.25, 2.0, 3.4, 4.5, 6.0}) {
        double dth = -120.0 - 36.0 / (x0 - 4.0) - 160.0 / (x0 - 5.0) - 9.0 / (x0 - 3.0) -
                     2.0 * (2.0 * x0 - 7.0) / ((x0 - 7.0) * x0 + 9.0);
        double want = -(double)D.eval_ld(x0) * dth;
        double got = (double)quint.eval_ld(x0);
        if (std::fabs(want - got) > 1e-6 * std::max(1.0, std::fabs(want)))
            throw std::logic_error("critical numerator mismatch");
    }
    return quint;
}

ThetaResult theta_min() {
    ThetaResult res;
    const double dom_hi = (76.0 / 33.0) * (76.0 / 33.0);
    const double s13 = std::sqrt(13.0);
    const double sing[5] = {(7.0 - s13) / 2.0, 3.0, 4.0, 5.0, (7.0 + s13) / 2.0};
    const bool is_quad[5] = {true, false, false, false, true};

    IntPoly quint = theta_critical_quintic();
    IntPoly dquint = quint.derivative();
    res.min_value = std::numeric_limits<double>::infinity();
    for (double r : real_roots(quint)) {
        if (r <= 1e-6 || r >= dom_hi - 1e-6) continue;
        bool near_sing = false;
        for (double c : sing) {
            if (std::fabs(r - c) < 1e-6) near_sing = true;
        }
        if (near_sing) continue;
        for (int it = 0; it < 60; ++it) {
            double d = (double)dquint.eval_ld(r);
            if (d == 0.0) break;
            double step = (double)quint.eval_ld(r) / d;
            r -= step;
            if (std::fabs(step) < 1e-16) break;
        }
        double v = theta_eval(r);
        if (v < res.min_value) {
            res.min_value = v;
            res.min_x = r;
        }
    }

    const double delta = 1e-3;
    res.certified = true;
    res.ball_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 5; ++i) {
        double m = ball_lower(sing[i], delta, dom_hi, is_quad[i]);
        res.ball_margin = std::min(res.ball_margin, m);
        if (m <= 0.0) res.certified = false;
    }

    std::vector<std::pair<double, double>> segs;
    double start = 0.0;
    for (int i = 0; i < 5; ++i) {
        double a = sing[i] - delta, b = sing[i] + delta;
        if (a > start) segs.push_back({start, std::min(a, dom_hi)});
        start = b;
        if (start >= dom_hi) break;
    }
    if (start < dom_hi) segs.push_back({start, dom_hi});

    std::vector<std::pair<double, double>> stack(segs.rbegin(), segs.rend());
    long pops = 0;
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (++pops > 5000000 || b - a < 1e-10) {
            res.certified = false;
            break;
        }
        if (segment_lower(a, b) > 0.0) {
            ++res.intervals;
            continue;
        }
        double mid = 0.5 * (a + b);
        stack.push_back({mid, b});
        stack.push_back({a, mid});
    }
    return res;
}

// ---- residue splits ----

PrimeSplit decompose_prime(const CycInt& b, long p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("p must be prime");
    long N = b.conductor();
    if (N % p != 0) throw std::invalid_argument("p does not divide the conductor");
    if ((N / p) % p == 0) throw std::invalid_argument("p^2 divides the conductor");
    long M = N / p;
    const Field& f = field(N);
    long inv_m = mod_inv(M % p, p);
    long inv_p = M == 1 ? 0 : mod_inv(p % M, M);
    std::vector<CycInt> raw((std::size_t)p, CycInt::zero(M));
    const auto& coeffs = b.coeffs();
    for (long e = 0; e < f.phi; ++e) {
        const Int& ce = coeffs[(std::size_t)e];
        if (ce == 0) continue;
        long x = (e % p) * inv_m % p;
        long y = M == 1 ? 0 : (e % M) * inv_p % M;
        raw[(std::size_t)x] = raw[(std::size_t)x] + root(M, y) * ce;
    }
    long h = (p - 1) / 2;
    CycInt shift = raw[(std::size_t)h];
    PrimeSplit out;
    out.p = p;
    for (long i = -h; i <= h; ++i) {
        long x = ((i % p) + p) % p;
        CycInt ai = raw[(std::size_t)x] - shift;
        if (!ai.is_zero()) ++out.x_count;
        out.alphas.emplace(i, std::move(ai));
    }
    CycInt rec = CycInt::zero(1);
    for (const auto& [i, ai] : out.alphas) {
        long x = ((i % p) + p) % p;
        rec = rec + root(N, M * x) * ai;
    }
    if (!(rec == b)) throw std::logic_error("residue split failed to reconstruct");
    if (b.is_real()) {
        out.lambda = out.alphas.at(0).conj() - out.alphas.at(0);
        if (!(out.lambda.conj() == CycInt::zero(1) - out.lambda))
            throw std::logic_error("skew part is not antireal");
    }
    return out;
}

PrimePowerSplit decompose_prime_power(const CycInt& b, long p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("p must be prime");
    long N = b.conductor();
    long pm = 1;
    long m = 0;
    while (N % (pm * p) == 0) {
        pm *= p;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("p^2 must divide the conductor");
    long M = N / pm;
    long pm1 = pm / p;
    long Np = N / p;
    long inv_m_pm = mod_inv(M % pm, pm);
    long inv_pm_m = M == 1 ? 0 : mod_inv(pm % M, M);
    long t1 = M % Np;   // zeta_Np^t1 = zeta_(p^(m-1))
    long t2 = pm1;      // zeta_Np^t2 = zeta_M
    const Field& f = field(N);
    const auto& coeffs = b.coeffs();
    PrimePowerSplit out;
    out.p = p;
    out.m = m;
    out.alphas.assign((std::size_t)p, CycInt::zero(1));
    for (long e = 0; e < f.phi; ++e) {
        const Int& ce = coeffs[(std::size_t)e];
        if (ce == 0) continue;
        long x = (e % pm) * inv_m_pm % pm;
        long y = M == 1 ? 0 : (e % M) * inv_pm_m % M;
        long i = x % p;
        long xp = x / p;
        long ep = (xp % pm1) * t1 % Np;
        if (M > 1) ep = (ep + y * t2) % Np;
        out.alphas[(std::size_t)i] = out.alphas[(std::size_t)i] + root(Np, ep) * ce;
    }
    CycInt rec = CycInt::zero(1);
    for (long i = 0; i < p; ++i) {
        rec = rec + root(N, M % N * i % N) * out.alphas[(std::size_t)i];
    }
    if (!(rec == b)) throw std::logic_error("residue split failed to reconstruct");
    return out;
}

// ---- enumerated split minima ----

namespace {

struct Conj420 {
    long N = 420;
    std::vector<long> ks;                      // the 96 units mod 420
    std::vector<std::complex<double>> W;       // all 420th roots
};

const Conj420& conj420() {
    static const Conj420 c = [] {
        Conj420 c;
        c.W.resize(c.N);
        for (long e = 0; e < c.N; ++e) {
            double th = 2.0 * (double)kPi * (double)e / (double)c.N;
            c.W[(std::size_t)e] = {std::cos(th), std::sin(th)};
        }
        c.ks = coprime_residues(c.N);
        return c;
    }();
    return c;
}

double house_of_terms(const std::vector<std::pair<long, double>>& terms) {
    const Conj420& c = conj420();
    double best = 0.0;
    for (long k : c.ks) {
        std::complex<double> s = 0.0;
        for (const auto& [e, co] : terms) s += co * c.W[(std::size_t)((k * e) % c.N)];
        best = std::max(best, std::norm(s));
    }
    return std::sqrt(best);
}

}  // namespace

std::vector<SplitMinimum> residue_split_minima() {
    const Conj420& cj = conj420();
    const long N = cj.N;
    const std::size_t nk = cj.ks.size();

    // shared gamma rows: pair values per conjugate, indices scaled from order 84
    std::vector<std::vector<double>> G(43, std::vector<double>(nk));
    for (long l = 0; l < 43; ++l) {
        for (std::size_t j = 0; j < nk; ++j) {
            long e = (5 * l * cj.ks[j]) % N;
            G[(std::size_t)l][j] = 2.0 * cj.W[(std::size_t)e].real();
        }
    }

    // quadratic-part orbit: beta = z5*a + conj both ways, a = z84^t*(1+sqrt(-7))/2
    double x2_best = std::numeric_limits<double>::infinity();
    long x2_t = -1;
    for (long t = 0; t < 84; ++t) {
        std::vector<std::pair<long, double>> terms;
        for (long a : {3L, 5L, 6L}) {
            long e = (5 * t + 60 * a) % N;
            terms.push_back({(e + 84) % N, -1.0});
            terms.push_back({(756 - e) % N, -1.0});
        }
        double h = house_of_terms(terms);
        if (h < x2_best) {
            x2_best = h;
            x2_t = t;
        }
    }

    // vanishing-skew pairs: beta = z5*a + z5^-1*conj(a) + pair, a = z84^i + z84^j
    std::set<long long> l0_houses;
    {
        std::vector<std::complex<double>> pre(nk);
        for (long i = 0; i < 84; ++i) {
            for (long j = i; j < 84; ++j) {
                long e1 = (5 * i + 84) % N, e2 = (5 * j + 84) % N;
                long e3 = (756 - 5 * i) % N, e4 = (756 - 5 * j) % N;
                for (std::size_t u = 0; u < nk; ++u) {
                    long k = cj.ks[u];
                    pre[u] = cj.W[(std::size_t)(k * e1 % N)] + cj.W[(std::size_t)(k * e2 % N)] +
                             cj.W[(std::size_t)(k * e3 % N)] + cj.W[(std::size_t)(k * e4 % N)];
                }
                for (long l = 0; l < 43; ++l) {
                    double m2 = 0.0;
                    const double* g = G[(std::size_t)l].data();
                    for (std::size_t u = 0; u < nk; ++u) {
                        double re = pre[u].real() + g[u], im = pre[u].imag();
                        m2 = std::max(m2, re * re + im * im);
                    }
                    double h = std::sqrt(m2);
                    if (h > 2.0 + 1e-9) l0_houses.insert(llround(h * 1e9));
                }
            }
        }
    }
    if (l0_houses.size() < 2) throw std::logic_error("pair scan found too few houses");
    auto it0 = l0_houses.begin();
    double l0_first = (double)*it0 / 1e9;
    double l0_second = (double)*std::next(it0) / 1e9;

    // nonvanishing-skew scan: beta = a + (a - conj(a))*(z5 + z5^2)
    double lnz_best = std::numeric_limits<double>::infinity();
    {
        auto consider = [&](const std::vector<long>& aexps) {
            std::map<long, double> alpha, beta;
            for (long e : aexps) alpha[e % N] += 1.0;
            std::map<long, double> lam;
            for (const auto& [e, co] : alpha) {
                lam[e] += co;
                lam[(N - e) % N] -= co;
            }
            beta = alpha;
            for (const auto& [e, co] : lam) {
                if (co == 0.0) continue;
                beta[(e + 84) % N] += co;
                beta[(e + 168) % N] += co;
            }
            std::vector<std::pair<long, double>> terms;
            bool any_skew = false;
            for (const auto& [e, co] : lam) any_skew |= co != 0.0;
            if (!any_skew) return;
            for (const auto& [e, co] : beta) {
                if (co != 0.0) terms.push_back({e, co});
            }
            double h = house_of_terms(terms);
            if (h > 2.0 + 1e-9) lnz_best = std::min(lnz_best, h);
        };
        for (long i = 0; i < 84; ++i) consider({5 * i});
        for (long i = 0; i < 84; ++i) {
            for (long j = i; j < 84; ++j) consider({5 * i, 5 * j});
        }
        for (long d : divisors(84)) {
            for (long j = 0; j < 84; ++j) {
                for (long k = j; k < 84; ++k) consider({5 * d % N, 5 * j, 5 * k});
            }
        }
    }

    // seven-triples scan: beta = z5*a + gamma + z5^-1*conj(a), a = z84^i*(1+z7^j+z7^k),
    // gamma = 1 or a cosine pair
    double x3g_best = std::numeric_limits<double>::infinity();
    {
        std::vector<std::complex<double>> pre(nk);
        for (long i = 0; i < 84; ++i) {
            for (long j = 1; j < 7; ++j) {
                for (long k = j + 1; k < 7; ++k) {
                    long a1 = 5 * i % N, a2 = (5 * i + 60 * j) % N, a3 = (5 * i + 60 * k) % N;
                    for (std::size_t u = 0; u < nk; ++u) {
                        long kk = cj.ks[u];
                        std::complex<double> s = 0.0;
                        for (long e : {a1, a2, a3}) {
                            s += cj.W[(std::size_t)(kk * ((e + 84) % N) % N)];
                            s += cj.W[(std::size_t)(kk * ((756 + N - e) % N) % N)];
                        }
                        pre[u] = s;
                    }
                    double m2 = 0.0;
                    for (std::size_t u = 0; u < nk; ++u) {
                        double re = pre[u].real() + 1.0, im = pre[u].imag();
                        m2 = std::max(m2, re * re + im * im);
                    }
                    double h = std::sqrt(m2);
                    if (h > 2.0 + 1e-9) x3g_best = std::min(x3g_best, h);
                    for (long l = 0; l < 43; ++l) {
                        double g2 = 0.0;
                        const double* g = G[(std::size_t)l].data();
                        for (std::size_t u = 0; u < nk; ++u) {
                            double re = pre[u].real() + g[u], im = pre[u].imag();
                            g2 = std::max(g2, re * re + im * im);
                        }
                        h = std::sqrt(g2);
                        if (h > 2.0 + 1e-9) x3g_best = std::min(x3g_best, h);
                    }
                }
            }
        }
    }

    const double pi = (double)kPi;
    double cf_x2 = 0.5 * std::sqrt(13.0 + 3.0 * std::sqrt(5.0) +
                                   std::sqrt(14.0 * (5.0 + std::sqrt(5.0))));
    double cf_pairs = 4.0 * std::cos(pi / 5.0) * std::cos(3.0 * pi / 7.0) +
                      2.0 * std::cos(pi / 7.0);
    double cf_eta = 2.0 * std::cos(pi / 30.0) + 2.0 * std::cos(13.0 * pi / 30.0);
    double cf_seven = 2.0 * std::cos(pi / 5.0) * (1.0 + 2.0 * std::cos(2.0 * pi / 7.0)) - 1.0;
    double b1 = 2.0 * std::sqrt(2.0) * std::cos(pi / 7.0);
    double b2 = 2.0 * std::sqrt(2.0 * std::cos(2.0 * pi / 11.0));
    double b3 = 2.0 * std::sqrt(3.0) * std::cos(pi / 5.0);
    double b4 = 1.0 + 2.0 * std::cos(2.0 * pi / 7.0) + 2.0 * std::cos(2.0 * pi / 5.0);

    std::vector<SplitMinimum> rows;
    rows.push_back({"half-sqrt-minus7-orbit", true, x2_best, cf_x2, 2.728243, x2_t});
    rows.push_back({"five-pairs-degenerate", true, l0_first, std::sqrt(5.0), 2.236068, -1});
    rows.push_back({"five-pairs", true, l0_second, cf_pairs, 2.522030, -1});
    rows.push_back({"five-skew", true, lnz_best, cf_eta, 2.404867, -1});
    rows.push_back({"five-seven-triple", true, x3g_best, cf_seven, 2.635689, -1});
    rows.push_back({"bound-seven-pair", false, b1, b1, 2.548324, -1});
    rows.push_back({"bound-eleven-pair", false, b2, b2, 2.594229, -1});
    rows.push_back({"bound-five-triple", false, b3, b3, 2.802517, -1});
    rows.push_back({"bound-five-seven-sum", false, b4, b4, 2.865013, -1});
    return rows;
}

// ---- exhaustive classification of small mean-square values ----

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

}  // namespace

MScanResult classify_m_below(const Rat& bound, long conductor) {
    long L = conductor;
    if (L < 3 || L > 2000) throw std::invalid_argument("conductor out of range");
    if (L % 4 == 2) throw std::invalid_argument("conductor not in canonical form");
    if (bound <= 0 || bound > 100) throw std::invalid_argument("bound out of range");
    const Field& f = field(L);
    const long phi = f.phi;

    std::vector<int32_t> EE((std::size_t)(2 * L));
    for (long r = 0; r < L; ++r) {
        EE[(std::size_t)r] = EE[(std::size_t)(r + L)] = (int32_t)f.trace[(std::size_t)r];
    }
    std::vector<std::vector<int32_t>> R32((std::size_t)L, std::vector<int32_t>((std::size_t)phi));
    for (long e = 0; e < L; ++e) {
        for (long i = 0; i < phi; ++i) {
            const Int& v = f.pow_rows[(std::size_t)e][(std::size_t)i];
            if (v > 1000000 || v < -1000000) throw std::overflow_error("basis row overflow");
            R32[(std::size_t)e][(std::size_t)i] = (int32_t)v.convert_to<long>();
        }
    }

    // largest pair-trace total P with (k*phi + 2P)/phi < bound
    auto pmax_for = [&](long k) {
        Rat U = bound * phi - k * phi;
        Int num = boost::multiprecision::numerator(U);
        Int den = boost::multiprecision::denominator(U);
        return floor_div(num - 1, 2 * den).convert_to<long long>();
    };

    auto add_row = [&](std::vector<int32_t>& dst, long e) {
        const auto& r = R32[(std::size_t)(((e % L) + L) % L)];
        for (long i = 0; i < phi; ++i) dst[(std::size_t)i] += r[(std::size_t)i];
    };
    auto key_of = [&](const std::vector<int32_t>& v) {
        return std::string(reinterpret_cast<const char*>(v.data()), v.size() * 4);
    };

    // value classes, lowest case inserted first so ties keep the low tag
    std::unordered_map<std::string, int> case_of;
    {
        std::vector<int32_t> row((std::size_t)phi, 0);
        case_of.emplace(key_of(row), 1);
        for (long t = 0; t < L; ++t) {
            std::fill(row.begin(), row.end(), 0);
            add_row(row, t);
            case_of.emplace(key_of(row), 1);
        }
        for (long j = 0; j < L; ++j) {
            for (long k = j; k < L; ++k) {
                std::fill(row.begin(), row.end(), 0);
                add_row(row, j);
                add_row(row, k);
                case_of.emplace(key_of(row), 2);
            }
        }
        if (L % 7 == 0) {
            long s7 = L / 7;
            for (long t = 0; t < L; ++t) {
                for (long i = 1; i < 7; ++i) {
                    for (long j = i + 1; j < 7; ++j) {
                        std::fill(row.begin(), row.end(), 0);
                        add_row(row, t);
                        add_row(row, t + s7 * i);
                        add_row(row, t + s7 * j);
                        case_of.emplace(key_of(row), 3);
                    }
                }
            }
        }
        if (L % 15 == 0) {
            long s3 = L / 3, s5 = L / 5;
            for (long t = 0; t < L; ++t) {
                for (long s = 1; s <= 2; ++s) {
                    for (long i = 1; i < 5; ++i) {
                        for (long j = i + 1; j < 5; ++j) {
                            std::fill(row.begin(), row.end(), 0);
                            add_row(row, t + s3 * s);
                            std::vector<int32_t> neg((std::size_t)phi, 0);
                            add_row(neg, t + s5 * i);
                            add_row(neg, t + s5 * j);
                            for (long u = 0; u < phi; ++u)
                                row[(std::size_t)u] -= neg[(std::size_t)u];
                            case_of.emplace(key_of(row), 4);
                        }
                    }
                }
            }
        }
    }

    // real hits must land on a cosine pair, a seven-triple, or the degree-8
    // orbit, each up to sign
    std::unordered_set<std::string> real_keys;
    {
        std::vector<int32_t> row((std::size_t)phi, 0);
        auto add_both = [&]() {
            real_keys.insert(key_of(row));
            for (auto& v : row) v = -v;
            real_keys.insert(key_of(row));
        };
        for (long k = 0; k < L; ++k) {
            std::fill(row.begin(), row.end(), 0);
            add_row(row, k);
            add_row(row, L - k);
            add_both();
        }
        if (L % 7 == 0) {
            long s7 = L / 7;
            for (long k = 1; k <= 3; ++k) {
                std::fill(row.begin(), row.end(), 0);
                add_row(row, 0);
                add_row(row, s7 * k);
                add_row(row, s7 * (7 - k));
                add_both();
            }
        }
        if (L % 60 == 0) {
            for (long k : f.coprimes) {
                std::fill(row.begin(), row.end(), 0);
                add_row(row, k * (L / 12) % L);
                add_row(row, k * (L / 20) % L);
                add_row(row, k * (17 * (L / 20)) % L);
                add_both();
            }
        }
    }

    MScanResult res;
    res.conductor = L;
    res.bound = bound;

    std::vector<int32_t> row((std::size_t)phi, 0);
    std::vector<int32_t> crow((std::size_t)phi, 0);
    auto classify = [&](std::vector<long> exps, long long P) {
        std::fill(row.begin(), row.end(), 0);
        std::fill(crow.begin(), crow.end(), 0);
        for (long e : exps) {
            add_row(row, e);
            add_row(crow, L - e);
        }
        auto it = case_of.find(key_of(row));
        if (it != case_of.end()) {
            ++res.case_counts[(std::size_t)it->second];
        } else {
            MClassEntry bad;
            bad.exponents = exps;
            long k = (long)exps.size();
            bad.m_value = Rat(k * phi + 2 * P, phi);
            res.violations.push_back(std::move(bad));
        }
        bool nonzero = false;
        for (int32_t v : row) nonzero |= v != 0;
        if (nonzero && row == crow) {
            ++res.real_hits;
            if (real_keys.find(key_of(row)) == real_keys.end()) ++res.real_form_failures;
        }
    };

    classify({}, 0);   // the empty sum
    classify({0}, 0);  // a single root

    const long long p2 = pmax_for(2), p3 = pmax_for(3), p4 = pmax_for(4);
    for (long a = 0; a < L; ++a) {
        if (EE[(std::size_t)a] <= p2) {
            ++res.two_term_hits;
            classify({0, a}, EE[(std::size_t)a]);
        }
    }
    for (long a = 0; a < L; ++a) {
        for (long b = a; b < L; ++b) {
            long long P = (long long)EE[(std::size_t)a] + EE[(std::size_t)b] +
                          EE[(std::size_t)(b - a)];
            if (P <= p3) {
                ++res.three_term_hits;
                classify({0, a, b}, P);
            }
        }
    }
    const KernelSet& K = kernels();
    std::vector<int32_t> hits((std::size_t)L);
    int32_t thresh4 = (int32_t)std::min<long long>(p4, std::numeric_limits<int32_t>::max() / 2);
    for (long a = 0; a < L; ++a) {
        for (long b = a; b < L; ++b) {
            int32_t base = EE[(std::size_t)a] + EE[(std::size_t)b] + EE[(std::size_t)(b - a)];
            std::size_t cnt =
                K.sweep_row(EE.data(), L, b, L - a, L - b, base, thresh4, hits.data());
            for (std::size_t u = 0; u < cnt; ++u) {
                long c = hits[u];
                long long P = (long long)base + EE[(std::size_t)c] +
                              EE[(std::size_t)(c - a)] + EE[(std::size_t)(c - b)];
                ++res.four_term_hits;
                classify({0, a, b, c}, P);
            }
        }
    }
    return res;
}

}  // namespace cyclo
