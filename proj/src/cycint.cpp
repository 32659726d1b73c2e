#include "cyclo/cycint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cyclo {

long normalize_conductor(long n) {
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    if (n % 4 == 2) n /= 2;
    return n;
}

namespace {

constexpr long kMaxConductor = 100000;

std::unique_ptr<Field> build_field(long n) {
    auto f = std::make_unique<Field>();
    f->n = n;
    f->phi = euler_phi(n);
    f->phi_poly = cyclotomic_poly(n);
    for (long k = 1; k < n; ++k) {
        if (gcd_long(k, n) == 1) f->coprimes.push_back(k);
    }
    if (n == 1) f->coprimes.push_back(1);  // identity map only
    long phi = f->phi;
    long rows = std::max<long>(n, 2 * phi - 1);
    f->pow_rows.assign(rows, std::vector<Int>(phi, Int(0)));
    for (long e = 0; e < std::min<long>(phi, rows); ++e) f->pow_rows[e][e] = 1;
    // x^e = x * x^(e-1) reduced by the monic Phi_n.
    for (long e = phi; e < rows; ++e) {
        const auto& prev = f->pow_rows[e - 1];
        std::vector<Int> cur(phi, Int(0));
        for (long i = 0; i + 1 < phi; ++i) cur[i + 1] = prev[i];
        const Int& top = prev[phi - 1];
        if (top != 0) {
            for (long i = 0; i < phi; ++i) cur[i] -= top * f->phi_poly.coeff(static_cast<int>(i));
        }
        f->pow_rows[e] = std::move(cur);
    }
    f->trace.resize(n);
    for (long k = 0; k < n; ++k) {
        long nk = n / gcd_long(n, k);
        f->trace[k] = static_cast<long long>(moebius(nk)) * (phi / euler_phi(nk));
    }
    return f;
}

}  // namespace

const Field& field(long n) {
    n = normalize_conductor(n);
    if (n > kMaxConductor) throw std::invalid_argument("conductor too large");
    static std::map<long, std::unique_ptr<Field>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_field(n)).first;
    return *it->second;
}

CycInt::CycInt(long conductor, std::vector<Int> coeffs) : n_(conductor), a_(std::move(coeffs)) {
    n_ = normalize_conductor(n_);
    const Field& f = field(n_);
    if (static_cast<long>(a_.size()) != f.phi) {
        throw std::invalid_argument("coefficient vector has wrong length for conductor");
    }
}

CycInt CycInt::zero(long conductor) {
    conductor = normalize_conductor(conductor);
    return CycInt(conductor, std::vector<Int>(field(conductor).phi, Int(0)));
}

CycInt CycInt::from_int(Int v) {
    CycInt r;
    r.a_[0] = std::move(v);
    return r;
}

CycInt CycInt::root_of_unity(long order, long exp) {
    if (order < 1) throw std::invalid_argument("order must be positive");
    exp %= order;
    if (exp < 0) exp += order;
    Int sign = 1;
    while (order % 4 == 2) {
        // zeta_{2m}^k = (-1)^k zeta_m^{k (m+1)/2} for odd m.
        long m = order / 2;
        if (exp % 2 == 1) sign = -sign;
        exp = (exp % m) * ((m + 1) / 2) % m;
        order = m;
    }
    const Field& f = field(order);
    std::vector<Int> a = f.pow_rows[exp];
    if (sign < 0) {
        for (auto& v : a) v = -v;
    }
    return CycInt(order, std::move(a));
}

bool CycInt::is_zero() const {
    for (const auto& v : a_) {
        if (v != 0) return false;
    }
    return true;
}

bool CycInt::is_integer() const {
    for (size_t i = 1; i < a_.size(); ++i) {
        if (a_[i] != 0) return false;
    }
    return true;
}

Int CycInt::integer_value() const {
    if (!is_integer()) throw std::logic_error("not a rational integer");
    return a_[0];
}

bool CycInt::is_real() const { return conj() == *this; }

long common_conductor(const CycInt& x, const CycInt& y) {
    return normalize_conductor(lcm_long(x.conductor(), y.conductor()));
}

bool CycInt::operator==(const CycInt& o) const {
    if (n_ == o.n_) return a_ == o.a_;
    long m = common_conductor(*this, o);
    return lifted(m).coeffs() == o.lifted(m).coeffs();
}

CycInt CycInt::operator+(const CycInt& o) const {
    if (n_ == o.n_) {
        std::vector<Int> r = a_;
        for (size_t i = 0; i < r.size(); ++i) r[i] += o.a_[i];
        return CycInt(n_, std::move(r));
    }
    long m = common_conductor(*this, o);
    return lifted(m) + o.lifted(m);
}

CycInt CycInt::operator-(const CycInt& o) const { return *this + (-o); }

CycInt CycInt::operator-() const {
    std::vector<Int> r = a_;
    for (auto& v : r) v = -v;
    return CycInt(n_, std::move(r));
}

CycInt CycInt::operator*(const CycInt& o) const {
    if (n_ != o.n_) {
        long m = common_conductor(*this, o);
        return lifted(m) * o.lifted(m);
    }
    const Field& f = field(n_);
    long phi = f.phi;
    std::vector<Int> conv(2 * phi - 1, Int(0));
    for (long i = 0; i < phi; ++i) {
        if (a_[i] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (o.a_[j] == 0) continue;
            conv[i + j] += a_[i] * o.a_[j];
        }
    }
    std::vector<Int> r(phi, Int(0));
    for (long e = 0; e < 2 * phi - 1; ++e) {
        if (conv[e] == 0) continue;
        if (e < phi) {
            r[e] += conv[e];
        } else {
            const auto& row = f.pow_rows[e];
            for (long i = 0; i < phi; ++i) r[i] += conv[e] * row[i];
        }
    }
    return CycInt(n_, std::move(r));
}

CycInt CycInt::operator*(const Int& k) const {
    std::vector<Int> r = a_;
    for (auto& v : r) v *= k;
    return CycInt(n_, std::move(r));
}

CycInt CycInt::galois(long k) const {
    const Field& f = field(n_);
    k %= n_;
    if (k < 0) k += n_;
    if (gcd_long(k, n_) != 1) throw std::invalid_argument("galois exponent not coprime to conductor");
    if (k == 1 || n_ == 1) return *this;
    std::vector<Int> r(f.phi, Int(0));
    for (long e = 0; e < f.phi; ++e) {
        if (a_[e] == 0) continue;
        const auto& row = f.pow_rows[(e * k) % n_];
        for (long i = 0; i < f.phi; ++i) r[i] += a_[e] * row[i];
    }
    return CycInt(n_, std::move(r));
}

CycInt CycInt::conj() const { return n_ == 1 ? *this : galois(n_ - 1); }

CycInt CycInt::lifted(long m) const {
    m = normalize_conductor(m);
    if (m == n_) return *this;
    if (m % n_ != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
    const Field& g = field(m);
    long step = m / n_;
    std::vector<Int> r(g.phi, Int(0));
    for (long e = 0; e < static_cast<long>(a_.size()); ++e) {
        if (a_[e] == 0) continue;
        const auto& row = g.pow_rows[e * step];
        for (long i = 0; i < g.phi; ++i) r[i] += a_[e] * row[i];
    }
    return CycInt(m, std::move(r));
}

CycInt CycInt::reduced() const {
    if (n_ == 1) return *this;
    for (long d : divisors(n_)) {
        if (d == n_) break;
        if (d % 4 == 2) continue;
        // Invariance under Gal(Q(zeta_n)/Q(zeta_d)) = { sigma_k : k = 1 (mod d) }.
        bool invariant = true;
        for (long k = 1 + d; k < n_ && invariant; k += d) {
            if (gcd_long(k, n_) != 1) continue;
            if (galois(k) != *this) invariant = false;
        }
        if (!invariant) continue;
        // Rewrite over Q(zeta_d): solve against the lifted power basis.
        const Field& fd = field(d);
        const Field& fn = field(n_);
        long step = n_ / d;
        std::vector<std::vector<Rat>> A(fn.phi, std::vector<Rat>(fd.phi, Rat(0)));
        for (long j = 0; j < fd.phi; ++j) {
            const auto& row = fn.pow_rows[j * step];
            for (long i = 0; i < fn.phi; ++i) A[i][j] = Rat(row[i]);
        }
        std::vector<Rat> b(fn.phi);
        for (long i = 0; i < fn.phi; ++i) b[i] = Rat(a_[i]);
        auto sol = solve_rational(std::move(A), std::move(b));
        if (!sol) continue;
        std::vector<Int> out(fd.phi);
        bool integral = true;
        for (long j = 0; j < fd.phi; ++j) {
            if (boost::multiprecision::denominator((*sol)[j]) != 1) { integral = false; break; }
            out[j] = boost::multiprecision::numerator((*sol)[j]);
        }
        if (!integral) throw std::logic_error("reduction produced non-integral coordinates");
        return CycInt(d, std::move(out));
    }
    return *this;
}

std::complex<long double> CycInt::embed(long k) const {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    std::complex<long double> r = 0;
    k %= n_;
    if (k < 0) k += n_;
    for (long e = 0; e < static_cast<long>(a_.size()); ++e) {
        if (a_[e] == 0) continue;
        long double ang = two_pi * static_cast<long double>((e * k) % n_) / static_cast<long double>(n_);
        long double coef = a_[e].convert_to<long double>();
        r += std::complex<long double>(coef * std::cos(ang), coef * std::sin(ang));
    }
    return r;
}

std::string CycInt::key() const {
    std::ostringstream os;
    os << n_ << "|";
    for (const auto& v : a_) os << v.str() << ",";
    return os.str();
}

std::string CycInt::to_text() const {
    std::ostringstream os;
    bool first = true;
    for (size_t e = 0; e < a_.size(); ++e) {
        if (a_[e] == 0) continue;
        Int v = a_[e];
        if (first) {
            if (v < 0) { os << "-"; v = -v; }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        if (e == 0) {
            os << v.str();
        } else {
            os << v.str() << "*z";
            if (e > 1) os << "^" << e;
        }
        first = false;
    }
    if (first) os << "0";
    os << " @ " << n_;
    return os.str();
}

CycInt CycInt::parse_text(const std::string& s) {
    auto at = s.find('@');
    if (at == std::string::npos) throw std::invalid_argument("missing conductor marker '@'");
    long n = std::stol(s.substr(at + 1));
    n = normalize_conductor(n);
    const Field& f = field(n);
    std::vector<Int> a(f.phi, Int(0));
    std::string body = s.substr(0, at);
    size_t i = 0;
    auto skip_ws = [&] { while (i < body.size() && std::isspace((unsigned char)body[i])) ++i; };
    bool any = false;
    while (true) {
        skip_ws();
        if (i >= body.size()) break;
        int sign = 1;
        if (body[i] == '+' || body[i] == '-') {
            if (body[i] == '-') sign = -1;
            ++i;
            skip_ws();
        }
        std::string digits;
        while (i < body.size() && std::isdigit((unsigned char)body[i])) digits += body[i++];
        skip_ws();
        Int coef = digits.empty() ? Int(1) : Int(digits);
        long e = 0;
        if (i < body.size() && (body[i] == '*' || body[i] == 'z')) {
            if (body[i] == '*') { ++i; skip_ws(); }
            if (i >= body.size() || body[i] != 'z') throw std::invalid_argument("bad term");
            ++i;
            if (i < body.size() && body[i] == '^') {
                ++i;
                std::string ed;
                while (i < body.size() && std::isdigit((unsigned char)body[i])) ed += body[i++];
                if (ed.empty()) throw std::invalid_argument("bad exponent");
                e = std::stol(ed);
            } else {
                e = 1;
            }
        } else if (digits.empty()) {
            throw std::invalid_argument("bad term");
        }
        if (e >= f.phi) throw std::invalid_argument("exponent out of canonical range");
        a[e] += sign * coef;
        any = true;
    }
    if (!any) throw std::invalid_argument("empty element text");
    return CycInt(n, std::move(a));
}

nlohmann::ordered_json CycInt::to_json() const {
    nlohmann::ordered_json j;
    j["conductor"] = n_;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : a_) {
        if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
            throw std::overflow_error("coefficient exceeds 64-bit range in JSON serialization");
        }
        arr.push_back(v.convert_to<long long>());
    }
    j["coeffs"] = std::move(arr);
    return j;
}

CycInt CycInt::from_json(const nlohmann::json& j) {
    long n = j.at("conductor").get<long>();
    std::vector<Int> a;
    for (const auto& v : j.at("coeffs")) a.push_back(Int(v.get<long long>()));
    return CycInt(n, std::move(a));
}

CycInt half_one_plus_sqrt(long p) {
    if (p % 4 != 1 || !is_prime(p)) throw std::invalid_argument("need a prime p = 1 (mod 4)");
    // (1 + sqrt(p))/2 = -sum over quadratic non-residues of zeta_p^a.
    std::vector<bool> residue(p, false);
    for (long a = 1; a < p; ++a) residue[a * a % p] = true;
    CycInt r = CycInt::zero(p);
    for (long a = 1; a < p; ++a) {
        if (!residue[a]) r = r - CycInt::root_of_unity(p, a);
    }
    return r;
}

}  // namespace cyclo
