#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cyclo/intpoly.hpp"

#include <nlohmann/json.hpp>

namespace cyclo {

// Conductors are normalized: N >= 1 and N != 2 (mod 4).
long normalize_conductor(long n);

// Per-conductor tables: canonical reduction rows and rational traces.
struct Field {
    long n = 1;
    long phi = 1;
    IntPoly phi_poly;
    std::vector<long> coprimes;             // 1 <= k < n, gcd(k, n) = 1
    std::vector<std::vector<Int>> pow_rows; // x^e mod Phi_n for e in [0, rows)
    std::vector<long long> trace;           // trace[k] = Tr(zeta_n^k), k in [0, n)
};

const Field& field(long n);

// Element of Z[zeta_N] in canonical coordinates modulo Phi_N.
// Invariant: a.size() == phi(N); N normalized. Immutable value semantics.
class CycInt {
public:
    CycInt() : n_(1), a_(1, Int(0)) {}
    CycInt(long conductor, std::vector<Int> coeffs);

    static CycInt zero(long conductor = 1);
    static CycInt from_int(Int v);
    static CycInt root_of_unity(long order, long exp);

    long conductor() const { return n_; }
    const std::vector<Int>& coeffs() const { return a_; }

    bool is_zero() const;
    bool is_integer() const;        // lies in Z
    Int integer_value() const;      // requires is_integer()
    bool is_real() const;

    bool operator==(const CycInt& o) const;
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator-() const;
    CycInt operator*(const CycInt& o) const;
    CycInt operator*(const Int& k) const;

    // Galois action zeta -> zeta^k, gcd(k, N) = 1.
    CycInt galois(long k) const;
    CycInt conj() const;

    // Rewrite over conductor M (normalized); requires N | M.
    CycInt lifted(long m) const;
    // Rewrite over the true minimal conductor.
    CycInt reduced() const;

    // Numeric image under zeta_N -> exp(2 pi i k / N).
    std::complex<long double> embed(long k = 1) const;

    // Stable key for hashing/dedup: conductor plus canonical coefficients.
    std::string key() const;

    std::string to_text() const;
    static CycInt parse_text(const std::string& s);
    nlohmann::ordered_json to_json() const;
    static CycInt from_json(const nlohmann::json& j);

private:
    long n_;
    std::vector<Int> a_;
};

// Least common conductor of two elements.
long common_conductor(const CycInt& x, const CycInt& y);

// (1 + sqrt(p)) / 2 for prime p = 1 (mod 4), as an exact cyclotomic integer.
CycInt half_one_plus_sqrt(long p);

}  // namespace cyclo
