#include "cyclo/graphs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cyclo/cycint.hpp"
#include "cyclo/invariants.hpp"

namespace cyclo {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

// phi table up to a fixed cap; covers every d with phi(d) <= ~1600.
const std::vector<long>& totient_table() {
    static const std::vector<long> tab = [] {
        const long cap = 8192;
        std::vector<long> t(cap + 1);
        for (long i = 0; i <= cap; ++i) t[i] = i;
        for (long i = 2; i <= cap; ++i)
            if (t[i] == i)
                for (long j = i; j <= cap; j += i) t[j] -= t[j] / i;
        return t;
    }();
    return tab;
}

long double abs_eval(const IntPoly& p, long double x) {
    long double ax = std::fabs(x), s = 0.0L;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        s = s * ax + std::fabs(static_cast<long double>(*it));
    return s;
}

nlohmann::ordered_json int_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return static_cast<long long>(v);
    return v.str();
}

nlohmann::ordered_json poly_json(const IntPoly& p) {
    auto a = nlohmann::ordered_json::array();
    for (const Int& v : p.c) a.push_back(int_json(v));
    return a;
}

nlohmann::ordered_json laurent_json(const LaurentPoly& p) {
    nlohmann::ordered_json j;
    j["low"] = p.lo;
    auto a = nlohmann::ordered_json::array();
    for (const Int& v : p.c) a.push_back(int_json(v));
    j["coeffs"] = a;
    return j;
}

CycInt eval_cyc(const IntPoly& p, const CycInt& x) {
    CycInt r = CycInt::zero();
    for (int i = p.degree(); i >= 0; --i) r = r * x + CycInt::from_int(p.coeff(i));
    return r;
}

bool cyc_is_zero(const CycInt& v) { return v.reduced() == CycInt::zero(); }

// ---- dense polynomials over F_p, coefficients in [0, p) ----

using ModPoly = std::vector<long>;

long mulmod_p(long a, long b, long p) {
    return static_cast<long>(static_cast<unsigned __int128>(a) * static_cast<unsigned long long>(b) %
                             static_cast<unsigned long long>(p));
}

void mp_trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly to_modp(const IntPoly& f, long p) {
    ModPoly r(f.c.size());
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        long v = static_cast<long>(f.c[i] % p);
        if (v < 0) v += p;
        r[i] = v;
    }
    mp_trim(r);
    return r;
}

int mp_deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

// remainder of a by monic-normalized m
void mp_rem(ModPoly& a, const ModPoly& m, long p) {
    long inv_lead = mod_inv(m.back(), p);
    while (mp_deg(a) >= mp_deg(m)) {
        long q = mulmod_p(a.back(), inv_lead, p);
        int shift = mp_deg(a) - mp_deg(m);
        for (int i = 0; i <= mp_deg(m); ++i) {
            long t = a[static_cast<std::size_t>(i + shift)] - mulmod_p(q, m[static_cast<std::size_t>(i)], p);
            if (t < 0) t += p;
            a[static_cast<std::size_t>(i + shift)] = t;
        }
        mp_trim(a);
        if (a.empty()) break;
    }
}

ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + static_cast<long>(static_cast<unsigned __int128>(a[i]) * b[j] %
                                                     static_cast<unsigned long long>(p))) % p;
        }
    }
    mp_trim(r);
    mp_rem(r, m, p);
    return r;
}

ModPoly mp_powmod(ModPoly base, long e, const ModPoly& m, long p) {
    ModPoly r{1};
    mp_rem(base, m, p);
    while (e > 0) {
        if (e & 1) r = mp_mulmod(r, base, m, p);
        base = mp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, long p) {
    while (!b.empty()) {
        mp_rem(a, b, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        long inv = mod_inv(a.back(), p);
        for (long& v : a) v = mulmod_p(v, inv, p);
    }
    return a;
}

ModPoly mp_derivative(const ModPoly& a, long p) {
    ModPoly r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(static_cast<long>(i % p * static_cast<unsigned long long>(a[i]) % p));
    mp_trim(r);
    return r;
}

struct BlockScan {
    bool squarefree = false;
    long k = 0;      // smallest degree with a factor
    long block = 0;  // total degree of the degree-k factors
};

// smallest factor-degree block of m mod p
BlockScan block_scan(const IntPoly& m, long p) {
    BlockScan out;
    ModPoly mp = to_modp(m, p);
    if (mp_deg(mp) != m.degree()) return out;  // lead vanished
    if (mp_deg(mp_gcd(mp, mp_derivative(mp, p), p)) != 0) return out;
    out.squarefree = true;
    ModPoly h{0, 1};  // x
    for (long k = 1; k <= mp_deg(mp); ++k) {
        h = mp_powmod(h, p, mp, p);
        ModPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] - 1 + p) % p;
        mp_trim(diff);
        ModPoly g = mp_gcd(diff, mp, p);
        if (mp_deg(g) > 0) {
            out.k = k;
            out.block = mp_deg(g);
            return out;
        }
    }
    out.k = mp_deg(mp);
    out.block = mp_deg(mp);
    return out;
}

long next_prime_after(long p) {
    do { ++p; } while (!is_prime(p));
    return p;
}

long ord_mod(long a, long f) {
    a %= f;
    if (a < 0) a += f;
    if (std::gcd(a, f) != 1) return 0;
    long v = a % f, ord = 1;
    while (v != 1) {
        v = static_cast<long>(v * static_cast<unsigned long long>(a) % static_cast<unsigned long long>(f));
        ++ord;
    }
    return ord;
}

// index-2 subgroups of (Z/f)* containing -1
std::vector<std::vector<long>> index2_subgroups(long f) {
    std::vector<long> units;
    for (long a = 1; a < f; ++a)
        if (std::gcd(a, f) == 1) units.push_back(a);
    std::set<long> sq;
    for (long u : units) sq.insert(u * u % f);
    std::map<long, int> coset_of;
    std::vector<long> reps;
    for (long u : units) {
        if (coset_of.count(u)) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(u);
        for (long s : sq) coset_of[u * s % f] = id;
    }
    int nc = static_cast<int>(reps.size());
    // U / squares is elementary 2-abelian; label cosets by bit vectors
    std::vector<int> label(static_cast<std::size_t>(nc), -1);
    label[static_cast<std::size_t>(coset_of[1])] = 0;
    int bits = 0;
    for (int c = 0; c < nc; ++c) {
        if (label[static_cast<std::size_t>(c)] >= 0) continue;
        int bit = 1 << bits++;
        std::vector<std::pair<int, int>> done;
        for (int i = 0; i < nc; ++i)
            if (label[static_cast<std::size_t>(i)] >= 0) done.push_back({i, label[static_cast<std::size_t>(i)]});
        for (auto [i, l] : done) {
            long prod = reps[static_cast<std::size_t>(i)] * reps[static_cast<std::size_t>(c)] % f;
            label[static_cast<std::size_t>(coset_of[prod])] = l | bit;
        }
    }
    std::vector<std::vector<long>> out;
    for (int chi = 1; chi < (1 << bits); ++chi) {
        std::vector<long> h;
        bool has_minus1 = false;
        for (long u : units) {
            if (__builtin_popcount(static_cast<unsigned>(chi & label[static_cast<std::size_t>(coset_of[u])])) % 2 == 0) {
                h.push_back(u);
                if (u == f - 1) has_minus1 = true;
            }
        }
        if (has_minus1 && h.size() * 2 == units.size()) out.push_back(std::move(h));
    }
    return out;
}

CycInt period_sum(long f, const std::vector<long>& exps) {
    CycInt s = CycInt::zero(f);
    for (long e : exps) s = s + CycInt::root_of_unity(f, e);
    return s;
}

std::vector<std::pair<long, Int>> cosine_pairs(long f, const std::vector<long>& h, const Int& s) {
    std::vector<std::pair<long, Int>> out;
    for (long e : h)
        if (2 * e < f) out.push_back({e, s});
    return out;
}

std::optional<AbelianResult> quadratic_certificate(const IntPoly& m, long cap) {
    Int b = m.coeff(1), c = m.coeff(0);
    Int d = b * b - c * 4;
    if (d <= 0) return std::nullopt;
    if (d > Int("4611686018427387904")) return std::nullopt;
    long dl = static_cast<long>(d);
    long d1 = 1;
    for (auto [p, e] : factorize(dl))
        if (e % 2) d1 *= p;
    if (d1 == 1) return std::nullopt;  // rational roots, m reducible
    long f = (d1 % 4 == 1) ? d1 : 4 * d1;
    if (f > cap) return std::nullopt;
    for (const auto& h : index2_subgroups(f)) {
        CycInt eta = period_sum(f, h);
        IntPoly mp = min_poly(eta);
        if (mp.degree() != 2) continue;
        Int t = -mp.coeff(1), pr = mp.coeff(0);
        Int deta = t * t - pr * 4;
        if (deta <= 0 || d % deta != 0) continue;
        Int s2 = d / deta;
        Int s = boost::multiprecision::sqrt(s2);
        if (s * s != s2) continue;
        for (int sign = 0; sign < 2; ++sign) {
            Int ss = sign ? -s : s;
            Int num = -(b + ss * t);
            if (num % 2 != 0) continue;
            Int r = num / 2;
            CycInt gamma = CycInt::from_int(r) + eta * ss;
            if (!cyc_is_zero(eval_cyc(m, gamma))) continue;
            AbelianResult res;
            res.outcome = AbelianOutcome::Certified;
            res.conductor = f;
            res.constant = r;
            res.cosine_combo = cosine_pairs(f, h, ss);
            std::ostringstream ev;
            ev << "root = " << r << " + (" << ss << ")*eta, eta a two-term period sum at conductor " << f
               << ", checked by exact substitution";
            res.evidence = ev.str();
            return res;
        }
    }
    return std::nullopt;
}

// disc of x^3 + a x^2 + b x + c
Int cubic_disc(const Int& a, const Int& b, const Int& c) {
    return a * a * b * b + b * c * a * 18 - a * a * a * c * 4 - b * b * b * 4 - c * c * 27;
}

std::optional<AbelianResult> cubic_certificate(const IntPoly& m, long cap, AbelianResult& refute) {
    Int a = m.coeff(2), b = m.coeff(1), c = m.coeff(0);
    Int disc = cubic_disc(a, b, c);
    if (disc < 0) {
        refute.outcome = AbelianOutcome::ProbablyNot;
        refute.evidence = "negative discriminant, field not totally real, hence not Galois over Q";
        return refute;
    }
    Int sq = boost::multiprecision::sqrt(disc);
    if (sq * sq != disc) {
        refute.outcome = AbelianOutcome::ProbablyNot;
        refute.evidence = "discriminant " + disc.str() + " is not a square, splitting field has degree 6";
        return refute;
    }
    if (sq > Int(1000000000)) return std::nullopt;
    long f0 = static_cast<long>(sq);
    for (long f : divisors(f0)) {
        if (f < 7 || f > cap) continue;
        if (!(f == 9 || (is_prime(f) && f % 3 == 1))) continue;
        std::vector<long> units;
        for (long u = 1; u < f; ++u)
            if (std::gcd(u, f) == 1) units.push_back(u);
        std::set<long> cubes;
        for (long u : units) cubes.insert(u * u % f * u % f);
        if (cubes.size() * 3 != units.size()) continue;
        if (!cubes.count(f - 1)) continue;
        std::vector<long> h(cubes.begin(), cubes.end());
        CycInt eta = period_sum(f, h);
        IntPoly mp = min_poly(eta);
        if (mp.degree() != 3) continue;
        Int t1 = -mp.coeff(2);
        for (long sl = 1; sl <= 12; ++sl) {
            for (int sign = 0; sign < 2; ++sign) {
                Int s = sign ? Int(-sl) : Int(sl);
                Int num = -a - s * t1;
                if (num % 3 != 0) continue;
                Int r = num / 3;
                CycInt gamma = CycInt::from_int(r) + eta * s;
                if (!cyc_is_zero(eval_cyc(m, gamma))) continue;
                AbelianResult res;
                res.outcome = AbelianOutcome::Certified;
                res.conductor = f;
                res.constant = r;
                res.cosine_combo = cosine_pairs(f, h, s);
                std::ostringstream ev;
                ev << "root = " << r << " + (" << s << ")*eta, eta the cubic-residue period sum at conductor "
                   << f << ", checked by exact substitution";
                res.evidence = ev.str();
                return res;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

// ---- MarkedGraph ----

std::vector<std::vector<long>> MarkedGraph::adjacency() const {
    std::vector<std::vector<long>> m(static_cast<std::size_t>(vertices),
                                     std::vector<long>(static_cast<std::size_t>(vertices), 0));
    for (const auto& e : edges) {
        m[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] += e[2];
        m[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] += e[2];
    }
    return m;
}

std::vector<long> MarkedGraph::degrees() const {
    std::vector<long> d(static_cast<std::size_t>(vertices), 0);
    for (const auto& e : edges) {
        d[static_cast<std::size_t>(e[0])] += e[2];
        d[static_cast<std::size_t>(e[1])] += e[2];
    }
    return d;
}

bool MarkedGraph::connected() const {
    if (vertices <= 0) return false;
    std::vector<std::vector<long>> nb(static_cast<std::size_t>(vertices));
    for (const auto& e : edges) {
        nb[static_cast<std::size_t>(e[0])].push_back(e[1]);
        nb[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    std::vector<char> seen(static_cast<std::size_t>(vertices), 0);
    std::vector<long> stack{0};
    seen[0] = 1;
    long count = 1;
    while (!stack.empty()) {
        long v = stack.back();
        stack.pop_back();
        for (long w : nb[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == vertices;
}

bool MarkedGraph::bipartite() const {
    std::vector<std::vector<long>> nb(static_cast<std::size_t>(vertices));
    for (const auto& e : edges) {
        nb[static_cast<std::size_t>(e[0])].push_back(e[1]);
        nb[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    std::vector<int> color(static_cast<std::size_t>(vertices), -1);
    for (long s = 0; s < vertices; ++s) {
        if (color[static_cast<std::size_t>(s)] >= 0) continue;
        color[static_cast<std::size_t>(s)] = 0;
        std::vector<long> stack{s};
        while (!stack.empty()) {
            long v = stack.back();
            stack.pop_back();
            for (long w : nb[static_cast<std::size_t>(v)]) {
                if (color[static_cast<std::size_t>(w)] < 0) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
                    stack.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool MarkedGraph::simple() const {
    std::set<std::pair<long, long>> seen;
    for (const auto& e : edges) {
        if (e[2] != 1) return false;
        auto key = std::minmax(e[0], e[1]);
        if (!seen.insert({key.first, key.second}).second) return false;
    }
    return true;
}

std::string MarkedGraph::to_text() const {
    std::ostringstream out;
    out << "vertices " << vertices << " marked " << marked << "\n";
    for (const auto& e : edges) {
        out << e[0] << " " << e[1];
        if (e[2] != 1) out << " " << e[2];
        out << "\n";
    }
    return out.str();
}

MarkedGraph MarkedGraph::parse_text(const std::string& s) {
    MarkedGraph g;
    std::istringstream in(s);
    std::string line;
    bool have_header = false;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!have_header) {
            std::string mk;
            if (first != "vertices" || !(ls >> g.vertices >> mk >> g.marked) || mk != "marked")
                throw std::runtime_error("graph text line " + std::to_string(lineno) +
                                         ": expected 'vertices N marked V'");
            have_header = true;
            continue;
        }
        long a = 0, b = 0, mult = 1;
        std::istringstream es(line);
        if (!(es >> a >> b)) throw std::runtime_error("graph text line " + std::to_string(lineno) + ": bad edge");
        es >> mult;
        g.edges.push_back({a, b, mult});
    }
    if (!have_header) throw std::runtime_error("graph text: missing header");
    if (g.vertices <= 0 || g.marked < 0 || g.marked >= g.vertices)
        throw std::runtime_error("graph text: marked vertex out of range");
    std::set<std::pair<long, long>> seen;
    for (const auto& e : g.edges) {
        if (e[0] < 0 || e[0] >= g.vertices || e[1] < 0 || e[1] >= g.vertices)
            throw std::runtime_error("graph text: edge endpoint out of range");
        if (e[0] == e[1]) throw std::runtime_error("graph text: self loop");
        if (e[2] < 1) throw std::runtime_error("graph text: edge multiplicity below 1");
        auto key = std::minmax(e[0], e[1]);
        if (!seen.insert({key.first, key.second}).second)
            throw std::runtime_error("graph text: duplicate edge, set a multiplicity instead");
    }
    return g;
}

MarkedGraph MarkedGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

nlohmann::ordered_json MarkedGraph::to_json() const {
    nlohmann::ordered_json j;
    j["vertices"] = vertices;
    j["marked"] = marked;
    auto a = nlohmann::ordered_json::array();
    for (const auto& e : edges) a.push_back({e[0], e[1], e[2]});
    j["edges"] = a;
    return j;
}

MarkedGraph MarkedGraph::from_json(const nlohmann::json& j) {
    MarkedGraph g;
    g.vertices = j.at("vertices").get<long>();
    g.marked = j.at("marked").get<long>();
    for (const auto& e : j.at("edges")) {
        long mult = e.size() > 2 ? e.at(2).get<long>() : 1;
        g.edges.push_back({e.at(0).get<long>(), e.at(1).get<long>(), mult});
    }
    return parse_text(g.to_text());  // reuse the validation
}

MarkedGraph path_graph(long n) {
    if (n < 1) throw std::invalid_argument("path_graph: n >= 1");
    MarkedGraph g;
    g.vertices = n;
    g.marked = 0;
    for (long i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1});
    return g;
}

MarkedGraph dynkin_d(long n) {
    if (n < 4) throw std::invalid_argument("dynkin_d: n >= 4");
    MarkedGraph g;
    g.vertices = n;
    g.marked = 0;
    for (long i = 0; i + 2 < n; ++i) g.edges.push_back({i, i + 1, 1});
    g.edges.push_back({n - 3, n - 1, 1});
    return g;
}

bool is_path_graph(const MarkedGraph& g) {
    if (!g.simple() || !g.connected()) return false;
    if (g.vertices == 1) return true;
    auto d = g.degrees();
    long ones = 0;
    for (long v : d) {
        if (v == 1) ++ones;
        else if (v != 2) return false;
    }
    return ones == 2;
}

bool is_dynkin_d(const MarkedGraph& g) {
    if (g.vertices < 4 || !g.simple() || !g.connected()) return false;
    auto d = g.degrees();
    long ones = 0, threes = 0, fork = -1;
    for (long v = 0; v < g.vertices; ++v) {
        if (d[static_cast<std::size_t>(v)] == 1) ++ones;
        else if (d[static_cast<std::size_t>(v)] == 3) { ++threes; fork = v; }
        else if (d[static_cast<std::size_t>(v)] != 2) return false;
    }
    if (ones != 3 || threes != 1) return false;
    long leaf_neighbors = 0;
    for (const auto& e : g.edges) {
        long other = -1;
        if (e[0] == fork) other = e[1];
        if (e[1] == fork) other = e[0];
        if (other >= 0 && d[static_cast<std::size_t>(other)] == 1) ++leaf_neighbors;
    }
    return leaf_neighbors >= 2;
}

MarkedGraph build_gamma_n(const MarkedGraph& base, long n) {
    if (n < base.vertices) throw std::invalid_argument("build_gamma_n: n below base size");
    MarkedGraph g = base;
    long prev = base.marked;
    for (long v = base.vertices; v < n; ++v) {
        g.edges.push_back({prev, v, 1});
        prev = v;
    }
    g.vertices = n;
    return g;
}

IntPoly char_poly(const MarkedGraph& g) {
    auto adj = g.adjacency();
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(g.vertices),
                                    std::vector<Int>(static_cast<std::size_t>(g.vertices)));
    for (long i = 0; i < g.vertices; ++i)
        for (long j = 0; j < g.vertices; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return char_poly_matrix(m);
}

FamilyCharPolys::FamilyCharPolys(MarkedGraph base) : base_(std::move(base)) {
    if (!base_.connected()) throw std::invalid_argument("family base must be connected");
}

const IntPoly& FamilyCharPolys::at(long n) {
    if (n < base_.vertices) throw std::invalid_argument("family char poly: n below base size");
    std::size_t idx = static_cast<std::size_t>(n - base_.vertices);
    while (table_.size() <= idx) {
        if (table_.size() < 2) {
            table_.push_back(char_poly(build_gamma_n(base_, base_.vertices + static_cast<long>(table_.size()))));
        } else {
            std::size_t k = table_.size();
            table_.push_back(IntPoly::x() * table_[k - 1] - table_[k - 2]);
        }
    }
    return table_[idx];
}

bool verify_recurrence(const MarkedGraph& base, long lo, long hi) {
    if (lo < base.vertices + 2) throw std::invalid_argument("verify_recurrence: lo >= |base| + 2");
    FamilyCharPolys fam(base);
    for (long n = lo; n <= hi; ++n)
        if (fam.at(n) != char_poly(build_gamma_n(base, n))) return false;
    return true;
}

LaurentPoly to_laurent(const IntPoly& p) { return substitute_t_plus_inv(p); }

namespace {

LaurentPoly stable_block_at(FamilyCharPolys& fam, long n) {
    LaurentPoly f = substitute_t_plus_inv(fam.at(n));
    LaurentPoly tmu(-1, {Int(-1), Int(0), Int(1)});  // t - 1/t
    LaurentPoly g = f * tmu;
    if (g.coeff(0) != 0) throw std::runtime_error("support blocks overlap, probe n too small");
    std::vector<Int> pos;
    for (int e = 1; e <= g.high(); ++e) pos.push_back(g.coeff(e));
    LaurentPoly ppart(1, pos);
    if (ppart.is_zero()) throw std::runtime_error("support blocks overlap, probe n too small");
    LaurentPoly a(ppart.low() - static_cast<int>(n), ppart.c);
    std::vector<Int> rc(a.c.rbegin(), a.c.rend());
    LaurentPoly mirror(-a.high() - static_cast<int>(n), rc);  // t^-n A(1/t)
    LaurentPoly lift(a.low() + static_cast<int>(n), a.c);     // t^n A(t)
    if (!(lift - mirror == g)) throw std::runtime_error("support blocks overlap, probe n too small");
    return a;
}

}  // namespace

LaurentPoly extract_A(const MarkedGraph& base, long probe_n) {
    FamilyCharPolys fam(base);
    LaurentPoly a = stable_block_at(fam, probe_n);
    LaurentPoly b = stable_block_at(fam, probe_n + 1);
    if (!(a == b)) throw std::runtime_error("stable block changed between probes, probe n too small");
    return a;
}

std::pair<long, long> compute_K(const MarkedGraph& base) {
    const long window = 40;
    long nmax = base.vertices + window;
    MarkedGraph big = build_gamma_n(base, nmax);
    auto adj = big.adjacency();
    std::vector<long> ks;
    for (long n = base.vertices; n <= nmax; ++n) {
        std::vector<std::vector<long long>> m2(static_cast<std::size_t>(n),
                                               std::vector<long long>(static_cast<std::size_t>(n), 0));
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k) {
                long aik = adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                if (!aik) continue;
                for (long j = 0; j < n; ++j)
                    m2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        static_cast<long long>(aik) * adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
        long long t2 = 0, t4 = 0;
        for (long i = 0; i < n; ++i) {
            t2 += m2[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
            for (long j = 0; j < n; ++j)
                t4 += m2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                      m2[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
        ks.push_back(static_cast<long>(t4 - 4 * t2 + 2 * n));
    }
    long k = ks.back();
    long n0 = nmax;
    for (std::size_t i = ks.size(); i-- > 0;) {
        if (ks[i] != k) break;
        n0 = base.vertices + static_cast<long>(i);
    }
    if (n0 > nmax - 10) throw std::runtime_error("trace law did not stabilize in the window");
    return {k, n0};
}

std::pair<LaurentPoly, LaurentPoly> repeated_root_poly(const LaurentPoly& a) {
    IntPoly p = a.poly_part();
    if (p.is_zero()) throw std::invalid_argument("repeated_root_poly: zero input");
    IntPoly g = poly_gcd(p, p.reversed());
    IntPoly b = IntPoly::constant(1);
    const auto& tot = totient_table();
    for (long d = 1; d < static_cast<long>(tot.size()) && g.degree() >= 1; ++d) {
        if (tot[static_cast<std::size_t>(d)] > g.degree()) continue;
        while (true) {
            auto q = exact_div(g, cyclotomic_poly(d));
            if (!q) break;
            g = *q;
            b = b * cyclotomic_poly(d);
        }
    }
    if (g.degree() >= 1) {
        // non-cyclotomic reciprocal leftover joins B only when fully on the circle
        bool on_circle = true;
        for (const auto& z : complex_roots(g))
            if (std::fabs(std::abs(z) - 1.0) > 1e-8) on_circle = false;
        if (on_circle) {
            b = b * g;
        }
    }
    auto c = exact_div(p, b);
    if (!c) throw std::runtime_error("repeated-root factor does not divide");
    LaurentPoly cl(a.low(), c->c);
    LaurentPoly bl(0, b.c);
    if (!(bl * cl == a)) throw std::runtime_error("repeated-root split failed to reconstruct");
    return {bl, cl};
}

long CyclotomicSplit::stripped_degree() const {
    long s = 0;
    for (auto [d, mult] : factors) s += static_cast<long>(cos_minpoly(d).degree()) * mult;
    return s;
}

CyclotomicSplit strip_cyclotomic(const IntPoly& p) {
    CyclotomicSplit out;
    out.rest = p;
    if (p.is_zero()) return out;
    const auto& tot = totient_table();
    for (long d = 1; d < static_cast<long>(tot.size()); ++d) {
        if (out.rest.degree() < 1) break;
        long fdeg = (d <= 2) ? 1 : tot[static_cast<std::size_t>(d)] / 2;
        if (fdeg > out.rest.degree()) continue;
        long double x0 = 2.0L * cosl(kTwoPi / static_cast<long double>(d));
        long double scale = abs_eval(out.rest, x0);
        if (std::fabs(out.rest.eval_ld(x0)) > 1e-9L * (scale + 1.0L)) continue;
        int mult = 0;
        while (true) {
            auto q = exact_div(out.rest, cos_minpoly(d));
            if (!q) break;
            out.rest = *q;
            ++mult;
        }
        if (mult) out.factors.push_back({d, mult});
    }
    return out;
}

PeriodInfo cyclotomic_period(FamilyCharPolys& fam, long lo, long hi) {
    if (lo < fam.base().vertices) lo = fam.base().vertices;
    if (hi <= lo) throw std::invalid_argument("cyclotomic_period: empty window");
    std::vector<std::vector<std::pair<long, int>>> sig;
    std::vector<long> deg;
    for (long n = lo; n <= hi; ++n) {
        auto sp = strip_cyclotomic(fam.at(n));
        sig.push_back(sp.factors);
        deg.push_back(sp.stripped_degree());
    }
    PeriodInfo info;
    info.window_lo = lo;
    long count = hi - lo + 1;
    for (long p = 1; p <= 36 && 2 * p <= count; ++p) {
        bool ok = true;
        for (long i = 0; i + p < count && ok; ++i)
            if (sig[static_cast<std::size_t>(i)] != sig[static_cast<std::size_t>(i + p)]) ok = false;
        if (!ok) continue;
        info.found = true;
        info.period = p;
        info.degree_by_residue.assign(static_cast<std::size_t>(p), 0);
        for (long i = 0; i < p; ++i)
            info.degree_by_residue[static_cast<std::size_t>((lo + i) % p)] = deg[static_cast<std::size_t>(i)];
        break;
    }
    info.max_degree = *std::max_element(deg.begin(), deg.end());
    return info;
}

long effective_bound(long k, long r) { return 9 * r + 4 * k; }

FamilyProfile family_profile(const MarkedGraph& base) {
    FamilyProfile pr;
    pr.base = base;
    std::string last_err;
    bool got = false;
    for (long probe = base.vertices + 12; probe <= base.vertices + 28 && !got; probe += 4) {
        try {
            pr.a = extract_A(base, probe);
            got = true;
        } catch (const std::runtime_error& e) {
            last_err = e.what();
        }
    }
    if (!got) throw std::runtime_error("stable block extraction failed: " + last_err);
    auto bc = repeated_root_poly(pr.a);
    pr.b = bc.first;
    pr.c = bc.second;
    auto kn = compute_K(base);
    pr.k = kn.first;
    pr.n0 = kn.second;
    FamilyCharPolys fam(base);
    long lo = std::max<long>(11, base.vertices + 4);
    pr.period = cyclotomic_period(fam, lo, lo + 74);
    pr.n_effective = effective_bound(pr.k, pr.period.max_degree);
    // off-circle roots of A; Salem shortcut needs a bipartite family and a single +-rho pair outside
    std::vector<std::complex<double>> off;
    double rho = 0;
    for (const auto& z : complex_roots(pr.a.poly_part()))
        if (std::abs(z) > 1.0 + 1e-9) {
            off.push_back(z);
            rho = std::max(rho, std::abs(z));
        }
    pr.salem_shortcut = base.bipartite() && off.size() == 2 && std::abs(off[0] + off[1]) < 1e-6;
    pr.lambda_infinity = rho > 0 ? rho + 1.0 / rho : 0.0;
    return pr;
}

nlohmann::ordered_json FamilyProfile::to_json() const {
    nlohmann::ordered_json j;
    j["base"] = base.to_json();
    j["a"] = laurent_json(a);
    j["b"] = laurent_json(b);
    j["c"] = laurent_json(c);
    j["k"] = k;
    j["n0"] = n0;
    nlohmann::ordered_json pj;
    pj["found"] = period.found;
    pj["period"] = period.period;
    pj["window_lo"] = period.window_lo;
    pj["degree_by_residue"] = period.degree_by_residue;
    pj["max_degree"] = period.max_degree;
    j["period"] = pj;
    j["n_effective"] = n_effective;
    j["salem_shortcut"] = salem_shortcut;
    j["lambda_infinity"] = lambda_infinity;
    return j;
}

AbelianResult abelian_test(const IntPoly& m, long conductor_cap, int prime_count) {
    AbelianResult res;
    if (m.is_zero() || m.degree() < 1 || m.lead() != 1) {
        res.evidence = "input must be monic of positive degree";
        return res;
    }
    int d = m.degree();
    if (d == 1) {
        res.outcome = AbelianOutcome::Certified;
        res.conductor = 1;
        res.constant = -m.coeff(0);
        res.evidence = "rational root";
        return res;
    }
    if (poly_gcd(m, m.derivative()).degree() > 0) {
        res.evidence = "input has repeated factors";
        return res;
    }
    // sample factor-degree blocks; mixed degrees refute a Galois (hence abelian) field
    std::vector<std::pair<long, long>> uniform_obs;
    long p = 2;
    while (res.primes_tested < prime_count && p < 100000) {
        p = next_prime_after(p);
        BlockScan s = block_scan(m, p);
        if (!s.squarefree) continue;
        ++res.primes_tested;
        if (s.block < d) {
            res.outcome = AbelianOutcome::ProbablyNot;
            std::ostringstream ev;
            ev << "factor degrees mixed mod " << p << ": a degree-" << s.k << " block of size " << s.block
               << " inside degree " << d;
            res.evidence = ev.str();
            return res;
        }
        uniform_obs.push_back({p, s.k});
    }
    if (d == 2) {
        if (auto c = quadratic_certificate(m, conductor_cap)) {
            c->primes_tested = res.primes_tested;
            return *c;
        }
    }
    if (d == 3) {
        AbelianResult refute;
        refute.primes_tested = res.primes_tested;
        if (auto c = cubic_certificate(m, conductor_cap, refute)) {
            c->primes_tested = res.primes_tested;
            return *c;
        }
    }
    // conductor sweep: an abelian root field of degree d sits inside a cyclotomic
    // field whose conductor f has d | phi(f) and ord_f(p) equal to the observed
    // uniform factor degree at every sampled prime
    std::vector<long> cands;
    for (long f = 3; f <= conductor_cap && static_cast<long>(cands.size()) < 64; ++f) {
        if (euler_phi(f) % d != 0) continue;
        bool ok = true;
        for (auto [q, u] : uniform_obs) {
            if (q % f == 0) continue;
            // the Frobenius order in a quotient of (Z/f)* divides the full order
            if (ord_mod(q % f, f) % u != 0) { ok = false; break; }
        }
        if (ok) cands.push_back(f);
    }
    if (cands.empty()) {
        res.outcome = AbelianOutcome::ProbablyNot;
        res.evidence = "no conductor below " + std::to_string(conductor_cap) +
                       " is consistent with the sampled factor degrees";
        return res;
    }
    for (long f : cands) {
        int checked = 0;
        bool refuted = false;
        long q = 0;
        while (checked < std::min(prime_count, 6) && q < 2000000) {
            q += f;  // q = 1 (mod f)
            if (!is_prime(q + 1)) continue;
            long qq = q + 1;
            ModPoly mq = to_modp(m, qq);
            if (mp_deg(mq) != d) continue;
            ModPoly h = mp_powmod(ModPoly{0, 1}, qq, mq, qq);
            ++checked;
            if (!(h.size() == 2 && h[0] == 0 && h[1] == 1)) {
                refuted = true;
                break;
            }
        }
        if (!refuted && checked > 0) {
            res.outcome = AbelianOutcome::Inconclusive;
            res.conductor = f;
            res.evidence = "conductor " + std::to_string(f) + " passes complete-split sampling at " +
                           std::to_string(checked) + " primes, no constructive certificate";
            return res;
        }
    }
    res.outcome = AbelianOutcome::ProbablyNot;
    res.evidence = "every consistent conductor below " + std::to_string(conductor_cap) +
                   " is refuted by a prime that fails to split completely";
    return res;
}

IntPoly phi_m(long m) {
    if (m < 0) throw std::invalid_argument("phi_m: m >= 0");
    return chebyshev_v(static_cast<int>(m));
}

Rat amplification(const IntPoly& lambda_minpoly, long m) {
    if (lambda_minpoly.degree() < 1 || lambda_minpoly.lead() != 1)
        throw std::invalid_argument("amplification: monic minimal polynomial required");
    IntPoly f = phi_m(m);
    IntPoly f2 = f * f;
    auto ps = power_sums(lambda_minpoly, f2.degree());
    Int acc = 0;
    for (int k = 0; k <= f2.degree(); ++k) acc += f2.coeff(k) * ps[static_cast<std::size_t>(k)];
    return Rat(acc, Int(lambda_minpoly.degree()));
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::DynkinAD: return "DynkinAD";
        case Outcome::ExcludedByBound: return "ExcludedByBound";
        case Outcome::ExcludedByTest: return "ExcludedByTest";
        case Outcome::Candidate: return "Candidate";
        case Outcome::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

nlohmann::ordered_json Verdict::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["outcome"] = outcome_name(outcome);
    j["lambda2_minpoly"] = poly_json(lambda2_minpoly);
    j["lambda2"] = lambda2;
    j["evidence"] = evidence;
    return j;
}

namespace {

Verdict verdict_core(const FamilyProfile& pr, long n, const IntPoly& pn, long conductor_cap, int prime_count) {
    Verdict v;
    v.n = n;
    auto sp = strip_cyclotomic(pn);
    if (sp.rest.is_unit()) {
        bool has1 = false;
        long dbig = 1;
        for (auto [d, mult] : sp.factors) {
            if (d == 1) has1 = true;
            dbig = std::max(dbig, d);
        }
        CycInt lam = has1 ? CycInt::from_int(2)
                          : CycInt::root_of_unity(dbig, 1) + CycInt::root_of_unity(dbig, dbig - 1);
        CycInt lam2 = lam * lam;
        v.lambda2_minpoly = min_poly(lam2);
        v.lambda2 = static_cast<double>(lam2.embed().real());
        MarkedGraph gn = build_gamma_n(pr.base, n);
        bool ad = is_path_graph(gn) || is_dynkin_d(gn);
        v.outcome = ad ? Outcome::DynkinAD : Outcome::Candidate;
        v.evidence = ad ? "all adjacency eigenvalues of cosine form; path or fork shape"
                        : "all adjacency eigenvalues of cosine form";
        return v;
    }
    double lmax = 0;
    for (double r : real_roots(sp.rest)) lmax = std::max(lmax, r);
    v.lambda2 = lmax * lmax;
    if (n >= pr.n_effective) {
        v.outcome = Outcome::ExcludedByBound;
        v.evidence = "n >= effective bound " + std::to_string(pr.n_effective);
        return v;
    }
    auto sopt = sp.rest.even_part();
    if (!sopt) {
        v.outcome = Outcome::Inconclusive;
        v.evidence = "stripped factor is not even in lambda";
        return v;
    }
    IntPoly s = *sopt;
    if (s.lead() < 0) s = -s;
    v.lambda2_minpoly = s;
    AbelianResult ab = abelian_test(s, conductor_cap, prime_count);
    switch (ab.outcome) {
        case AbelianOutcome::Certified:
            v.outcome = Outcome::Candidate;
            v.evidence = "norm squared generates an abelian field, conductor " + std::to_string(ab.conductor) +
                         "; " + ab.evidence;
            break;
        case AbelianOutcome::ProbablyNot:
            v.outcome = Outcome::ExcludedByTest;
            v.evidence = ab.evidence;
            break;
        case AbelianOutcome::Inconclusive:
            v.outcome = Outcome::Inconclusive;
            v.evidence = ab.evidence;
            break;
    }
    return v;
}

}  // namespace

Verdict family_verdict(const FamilyProfile& profile, long n, long conductor_cap, int prime_count) {
    FamilyCharPolys fam(profile.base);
    return verdict_core(profile, n, fam.at(n), conductor_cap, prime_count);
}

std::vector<Verdict> family_verdicts(const FamilyProfile& profile, long lo, long hi, long conductor_cap,
                                     int prime_count, int jobs) {
    if (lo < profile.base.vertices || hi < lo) throw std::invalid_argument("family_verdicts: bad range");
    FamilyCharPolys fam(profile.base);
    std::vector<IntPoly> polys;
    for (long n = lo; n <= hi; ++n) polys.push_back(fam.at(n));
    long count = hi - lo + 1;
    std::vector<Verdict> out(static_cast<std::size_t>(count));
    int nt = static_cast<int>(std::max<long>(1, std::min<long>({static_cast<long>(jobs), count, 16})));
    if (nt == 1) {
        for (long i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] =
                verdict_core(profile, lo + i, polys[static_cast<std::size_t>(i)], conductor_cap, prime_count);
        return out;
    }
    std::atomic<long> next{0};
    auto work = [&] {
        while (true) {
            long i = next.fetch_add(1);
            if (i >= count) break;
            out[static_cast<std::size_t>(i)] =
                verdict_core(profile, lo + i, polys[static_cast<std::size_t>(i)], conductor_cap, prime_count);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return out;
}

GraphNorm graph_norm(const MarkedGraph& g) {
    if (!g.connected()) throw std::invalid_argument("graph_norm: graph must be connected");
    GraphNorm out;
    IntPoly pn = char_poly(g);
    auto sp = strip_cyclotomic(pn);
    if (sp.rest.is_unit()) {
        bool has1 = false;
        long dbig = 1;
        for (auto [d, mult] : sp.factors) {
            if (d == 1) has1 = true;
            dbig = std::max(dbig, d);
        }
        CycInt lam = has1 ? CycInt::from_int(2)
                          : CycInt::root_of_unity(dbig, 1) + CycInt::root_of_unity(dbig, dbig - 1);
        CycInt lam2 = lam * lam;
        out.minpoly = min_poly(lam2);
        out.lambda2 = static_cast<double>(lam2.embed().real());
        out.radius = 1e-12;
        return out;
    }
    double lmax = 0;
    for (double r : real_roots(sp.rest)) lmax = std::max(lmax, r);
    out.lambda2 = lmax * lmax;
    out.radius = 1e-9 * (1.0 + out.lambda2);
    IntPoly q;
    if (auto sopt = sp.rest.even_part()) {
        q = *sopt;
    } else {
        // even and odd coefficient parts: prod (y - root^2) = +-(E^2 - y O^2)
        std::vector<Int> ec, oc;
        for (int i = 0; i <= sp.rest.degree(); ++i)
            (i % 2 == 0 ? ec : oc).push_back(sp.rest.coeff(i));
        IntPoly e(ec), o(oc);
        q = e * e - IntPoly::x() * o * o;
    }
    if (q.lead() < 0) q = -q;
    IntPoly rep = poly_gcd(q, q.derivative());
    if (rep.degree() > 0) q = *exact_div(q, rep);
    out.minpoly = q.primitive_part();
    return out;
}

}  // namespace cyclo
