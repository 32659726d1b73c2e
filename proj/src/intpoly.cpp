#include "cyclo/intpoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cyclo {

long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long t = a % b; a = b; b = t; }
    return a;
}

long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_long(a, b) * b;
}

std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> f;
    if (n < 0) n = -n;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

long euler_phi(long n) {
    long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

int moebius(long n) {
    int m = 1;
    for (auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

long radical(long n) {
    long r = 1;
    for (auto& [p, e] : factorize(n)) r *= p;
    return r;
}

std::vector<long> divisors(long n) {
    std::vector<long> d{1};
    for (auto& [p, e] : factorize(n)) {
        size_t sz = d.size();
        long pe = 1;
        for (int i = 0; i < e; ++i) {
            pe *= p;
            for (size_t j = 0; j < sz; ++j) d.push_back(d[j] * pe);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

int omega(long n) { return static_cast<int>(factorize(n).size()); }

long mod_pow(long base, long exp, long mod) {
    unsigned __int128 r = 1, b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<long>(r);
}

long mod_inv(long a, long m) {
    long g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1) {
        long q = g / a1;
        g -= q * a1; std::swap(g, a1);
        x -= q * x1; std::swap(x, x1);
    }
    if (g != 1) throw std::invalid_argument("mod_inv: not invertible");
    return ((x % m) + m) % m;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        if (n % p == 0) return n == p;
    }
    long d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d >>= 1; ++s; }
    for (long a : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        long x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = static_cast<long>((unsigned __int128)x * x % n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

IntPoly IntPoly::from_ints(std::initializer_list<long long> v) {
    std::vector<Int> c;
    c.reserve(v.size());
    for (auto x : v) c.push_back(Int(x));
    return IntPoly(std::move(c));
}

IntPoly IntPoly::x() { return from_ints({0, 1}); }

IntPoly IntPoly::constant(Int v) {
    IntPoly p;
    if (v != 0) p.c.push_back(std::move(v));
    return p;
}

IntPoly IntPoly::monomial(int deg, Int lead) {
    IntPoly p;
    if (lead != 0) {
        p.c.assign(deg + 1, Int(0));
        p.c[deg] = std::move(lead);
    }
    return p;
}

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool IntPoly::is_unit() const {
    return c.size() == 1 && (c[0] == 1 || c[0] == -1);
}

const Int& IntPoly::lead() const {
    static const Int zero(0);
    return c.empty() ? zero : c.back();
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    IntPoly r;
    r.c.assign(c.size() + o.c.size() - 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
}

IntPoly IntPoly::operator*(const Int& k) const {
    IntPoly r = *this;
    for (auto& v : r.c) v *= k;
    r.trim();
    return r;
}

IntPoly IntPoly::derivative() const {
    IntPoly r;
    for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * Int(i));
    r.trim();
    return r;
}

IntPoly IntPoly::reversed() const {
    IntPoly r = *this;
    std::reverse(r.c.begin(), r.c.end());
    r.trim();
    return r;
}

IntPoly IntPoly::shifted(const Int& a) const {
    // Horner: p(x + a) built from the top coefficient down.
    IntPoly r;
    IntPoly xa = IntPoly::from_ints({0, 1});
    if (!xa.c.empty()) xa.c[0] = a;
    for (int i = degree(); i >= 0; --i) {
        r = r * xa + IntPoly::constant(c[i]);
    }
    return r;
}

IntPoly IntPoly::pow(int e) const {
    IntPoly r = IntPoly::constant(1);
    IntPoly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& v : c) g = boost::multiprecision::gcd(g, v);
    return g;
}

IntPoly IntPoly::primitive_part() const {
    Int g = content();
    if (g == 0) return {};
    IntPoly r = *this;
    for (auto& v : r.c) v /= g;
    return r;
}

IntPoly IntPoly::monic_normalized() const {
    IntPoly r = primitive_part();
    if (!r.c.empty() && r.c.back() < 0) r = -r;
    return r;
}

Int IntPoly::eval_int(const Int& x) const {
    Int r = 0;
    for (int i = degree(); i >= 0; --i) r = r * x + c[i];
    return r;
}

Rat IntPoly::eval_rat(const Rat& x) const {
    Rat r = 0;
    for (int i = degree(); i >= 0; --i) r = r * x + Rat(c[i]);
    return r;
}

long double IntPoly::eval_ld(long double x) const {
    long double r = 0;
    for (int i = degree(); i >= 0; --i) r = r * x + c[i].convert_to<long double>();
    return r;
}

std::complex<long double> IntPoly::eval_c(std::complex<long double> x) const {
    std::complex<long double> r = 0;
    for (int i = degree(); i >= 0; --i) r = r * x + c[i].convert_to<long double>();
    return r;
}

std::optional<IntPoly> IntPoly::even_part() const {
    for (size_t i = 1; i < c.size(); i += 2) {
        if (c[i] != 0) return std::nullopt;
    }
    IntPoly s;
    for (size_t i = 0; i < c.size(); i += 2) s.c.push_back(c[i]);
    s.trim();
    return s;
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        Int a = c[i];
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (i == 0 || a != 1) os << a.str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::optional<IntPoly> exact_div(const IntPoly& p, const IntPoly& o) {
    if (o.is_zero()) return std::nullopt;
    if (p.is_zero()) return IntPoly{};
    if (p.degree() < o.degree()) return std::nullopt;
    std::vector<Rat> rem(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) rem[i] = Rat(p.c[i]);
    int dq = p.degree() - o.degree();
    std::vector<Rat> q(dq + 1);
    Rat lead = Rat(o.lead());
    for (int k = dq; k >= 0; --k) {
        Rat f = rem[k + o.degree()] / lead;
        q[k] = f;
        if (f != 0) {
            for (int j = 0; j <= o.degree(); ++j) rem[k + j] -= f * Rat(o.c[j]);
        }
    }
    for (const auto& r : rem) {
        if (r != 0) return std::nullopt;
    }
    IntPoly out;
    out.c.resize(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (boost::multiprecision::denominator(q[i]) != 1) return std::nullopt;
        out.c[i] = boost::multiprecision::numerator(q[i]);
    }
    out.trim();
    return out;
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    // Rational Euclid on primitive parts; sizes here are small enough that
    // coefficient growth is not a concern.
    std::vector<Rat> u, v;
    for (const auto& x : a.c) u.push_back(Rat(x));
    for (const auto& x : b.c) v.push_back(Rat(x));
    auto deg = [](const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; };
    auto trimv = [](std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trimv(u); trimv(v);
    while (!v.empty()) {
        // u mod v
        while (deg(u) >= deg(v) && !u.empty()) {
            Rat f = u.back() / v.back();
            int shift = deg(u) - deg(v);
            for (int j = 0; j < (int)v.size(); ++j) u[shift + j] -= f * v[j];
            trimv(u);
            if (u.empty()) break;
        }
        std::swap(u, v);
    }
    if (u.empty()) return {};
    // Clear denominators, return primitive part with positive lead.
    Int den = 1;
    for (const auto& x : u) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
    IntPoly g;
    g.c.resize(u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        Rat s = u[i] * Rat(den);
        g.c[i] = boost::multiprecision::numerator(s);
    }
    g.trim();
    return g.monic_normalized();
}

const IntPoly& cyclotomic_poly(long n) {
    static std::map<long, IntPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    IntPoly result;
    if (n == 1) {
        result = IntPoly::from_ints({-1, 1});
    } else {
        // x^n - 1 divided by all proper cyclotomic factors.
        IntPoly xn = IntPoly::monomial(static_cast<int>(n)) - IntPoly::constant(1);
        for (long d : divisors(n)) {
            if (d == n) continue;
            // Recursive fill without re-locking: compute inline.
            if (cache.find(d) == cache.end()) {
                IntPoly xd = IntPoly::monomial(static_cast<int>(d)) - IntPoly::constant(1);
                for (long d2 : divisors(d)) {
                    if (d2 == d) continue;
                    auto q = exact_div(xd, cache.at(d2));
                    xd = *q;
                }
                cache[d] = xd;
            }
            auto q = exact_div(xn, cache.at(d));
            if (!q) throw std::logic_error("cyclotomic_poly: division failed");
            xn = *q;
        }
        result = xn;
    }
    return cache[n] = result;
}

IntPoly chebyshev_v(int m) {
    if (m == 0) return IntPoly::constant(2);
    if (m == 1) return IntPoly::x();
    IntPoly a = IntPoly::constant(2), b = IntPoly::x(), x = IntPoly::x();
    for (int i = 2; i <= m; ++i) {
        IntPoly c = x * b - a;
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

const IntPoly& cos_minpoly(long d) {
    static std::map<long, IntPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    IntPoly psi;
    if (d == 1) {
        psi = IntPoly::from_ints({-2, 1});
    } else if (d == 2) {
        psi = IntPoly::from_ints({2, 1});
    } else {
        // Phi_d is palindromic of even degree 2m; Phi_d(t)/t^m = a_m + sum a_{m+j} (t^j + t^-j).
        const IntPoly& phi = cyclotomic_poly(d);
        int m = phi.degree() / 2;
        psi = IntPoly::constant(phi.coeff(m));
        for (int j = 1; j <= m; ++j) {
            psi = psi + chebyshev_v(j) * phi.coeff(m + j);
        }
    }
    return cache[d] = psi;
}

std::vector<double> real_roots(const IntPoly& p) {
    std::vector<double> roots;
    for (auto& z : complex_roots(p)) {
        if (std::abs(z.imag()) < 1e-9) roots.push_back(z.real());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<std::complex<double>> complex_roots(const IntPoly& p) {
    int n = p.degree();
    if (n <= 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    double lead = p.lead().convert_to<double>();
    for (int i = 0; i < n; ++i) {
        comp(i, n - 1) = -p.coeff(i).convert_to<double>() / lead;
        if (i > 0) comp(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()[i];
    return roots;
}

LaurentPoly LaurentPoly::from_poly(const IntPoly& p, int shift) {
    return LaurentPoly(shift, p.c);
}

void LaurentPoly::trim() {
    size_t drop = 0;
    while (drop < c.size() && c[drop] == 0) ++drop;
    if (drop) {
        c.erase(c.begin(), c.begin() + drop);
        lo += static_cast<int>(drop);
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) lo = 0;
}

Int LaurentPoly::coeff(int e) const {
    int i = e - lo;
    if (i < 0 || i >= (int)c.size()) return 0;
    return c[i];
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int nlo = std::min(lo, o.lo);
    int nhi = std::max(high(), o.high());
    LaurentPoly r;
    r.lo = nlo;
    r.c.assign(nhi - nlo + 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[lo - nlo + i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[o.lo - nlo + i] += o.c[i];
    r.trim();
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    LaurentPoly r;
    r.lo = lo + o.lo;
    r.c.assign(c.size() + o.c.size() - 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
}

IntPoly LaurentPoly::poly_part() const { return IntPoly(c); }

std::complex<long double> LaurentPoly::eval_c(std::complex<long double> t) const {
    std::complex<long double> r = 0;
    std::complex<long double> tp = std::pow(t, (long double)lo);
    for (size_t i = 0; i < c.size(); ++i) {
        r += c[i].convert_to<long double>() * tp;
        tp *= t;
    }
    return r;
}

std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        Int a = c[i];
        int e = lo + i;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (e == 0 || a != 1) os << a.str();
        if (e != 0) {
            if (a != 1) os << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

LaurentPoly substitute_t_plus_inv(const IntPoly& p) {
    // Horner in t + 1/t.
    LaurentPoly r;
    LaurentPoly arg(-1, {Int(1), Int(0), Int(1)});  // t^-1 + t
    for (int i = p.degree(); i >= 0; --i) {
        r = r * arg + LaurentPoly(0, {p.coeff(i)});
    }
    return r;
}

std::optional<std::vector<Rat>> solve_rational(std::vector<std::vector<Rat>> A,
                                               std::vector<Rat> b) {
    size_t m = A.size();
    if (m == 0) return std::nullopt;
    size_t n = A[0].size();
    std::vector<size_t> piv_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && A[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[row]);
        std::swap(b[sel], b[row]);
        Rat inv = A[row][col];
        for (size_t j = col; j < n; ++j) A[row][j] /= inv;
        b[row] /= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[row][j];
            b[i] -= f * b[row];
        }
        piv_col.push_back(col);
        ++row;
    }
    if (piv_col.size() != n) return std::nullopt;  // rank-deficient
    for (size_t i = row; i < m; ++i) {
        if (b[i] != 0) return std::nullopt;  // inconsistent
    }
    std::vector<Rat> x(n);
    for (size_t i = 0; i < n; ++i) x[piv_col[i]] = b[i];
    return x;
}

IntPoly char_poly_matrix(const std::vector<std::vector<Int>>& m) {
    size_t n = m.size();
    for (const auto& row : m) {
        if (row.size() != n) throw std::invalid_argument("char_poly_matrix: not square");
    }
    // N_1 = M, c_k = -tr(N_k)/k, N_{k+1} = M (N_k + c_k I).
    std::vector<Int> coeffs(n + 1, Int(0));
    coeffs[n] = 1;
    std::vector<std::vector<Int>> nk = m;
    for (size_t k = 1; k <= n; ++k) {
        Int tr = 0;
        for (size_t i = 0; i < n; ++i) tr += nk[i][i];
        if (tr % Int(k) != 0) throw std::logic_error("char_poly_matrix: inexact division");
        Int ck = -tr / Int(k);
        coeffs[n - k] = ck;
        if (k == n) break;
        std::vector<std::vector<Int>> sum = nk;
        for (size_t i = 0; i < n; ++i) sum[i][i] += ck;
        std::vector<std::vector<Int>> next(n, std::vector<Int>(n, Int(0)));
        for (size_t i = 0; i < n; ++i) {
            for (size_t l = 0; l < n; ++l) {
                if (m[i][l] == 0) continue;
                const Int& v = m[i][l];
                for (size_t j = 0; j < n; ++j) next[i][j] += v * sum[l][j];
            }
        }
        nk = std::move(next);
    }
    return IntPoly(std::move(coeffs));
}

std::vector<Int> power_sums(const IntPoly& p, int kmax) {
    if (p.is_zero() || p.lead() != 1) throw std::invalid_argument("power_sums: monic required");
    int d = p.degree();
    std::vector<Int> ps(static_cast<size_t>(kmax) + 1);
    ps[0] = d;
    // Newton: p_k + sum_{i=1}^{min(k-1,d)} a_{d-i} p_{k-i} + [k <= d] k a_{d-k} = 0.
    for (int k = 1; k <= kmax; ++k) {
        Int acc = 0;
        int top = std::min(k - 1, d);
        for (int i = 1; i <= top; ++i) acc += p.coeff(d - i) * ps[static_cast<size_t>(k - i)];
        if (k <= d) acc += Int(k) * p.coeff(d - k);
        ps[static_cast<size_t>(k)] = -acc;
    }
    return ps;
}

}  // namespace cyclo
