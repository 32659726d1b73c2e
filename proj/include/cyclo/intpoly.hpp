#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cyclo {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Elementary number theory on machine-size integers.
long gcd_long(long a, long b);
long lcm_long(long a, long b);
std::vector<std::pair<long, int>> factorize(long n);
long euler_phi(long n);
int moebius(long n);
long radical(long n);
std::vector<long> divisors(long n);
int omega(long n);
long mod_pow(long base, long exp, long mod);
long mod_inv(long a, long m);
bool is_prime(long n);

// Dense integer polynomial, coefficient of x^k at c[k].
// Invariant: no trailing zero coefficients; the zero polynomial has empty c.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    static IntPoly from_ints(std::initializer_list<long long> v);
    static IntPoly x();
    static IntPoly constant(Int v);
    static IntPoly monomial(int deg, Int lead = 1);

    void trim();
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_unit() const;  // +1 or -1
    const Int& lead() const;
    Int coeff(int k) const { return (k >= 0 && k < (int)c.size()) ? c[k] : Int(0); }
    bool operator==(const IntPoly& o) const { return c == o.c; }
    bool operator!=(const IntPoly& o) const { return c != o.c; }

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const Int& k) const;

    IntPoly derivative() const;
    IntPoly reversed() const;          // x^deg * p(1/x)
    IntPoly shifted(const Int& a) const;  // p(x + a)
    IntPoly pow(int e) const;
    Int content() const;
    IntPoly primitive_part() const;
    IntPoly monic_normalized() const;  // divide by +-content so lead > 0

    Int eval_int(const Int& x) const;
    Rat eval_rat(const Rat& x) const;
    long double eval_ld(long double x) const;
    std::complex<long double> eval_c(std::complex<long double> x) const;

    // p(x) == s(x^2) when p is even; returns s.
    std::optional<IntPoly> even_part() const;

    std::string str(const std::string& var = "x") const;
};

// Quotient if o divides p exactly over the integers.
std::optional<IntPoly> exact_div(const IntPoly& p, const IntPoly& o);
// Primitive gcd over Z (via rational Euclid), positive leading coefficient.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

const IntPoly& cyclotomic_poly(long n);
// V_0 = 2, V_1 = x, V_{m+1} = x V_m - V_{m-1}; V_m(z + 1/z) = z^m + z^-m.
IntPoly chebyshev_v(int m);
// Minimal polynomial of 2 cos(2 pi / d).
const IntPoly& cos_minpoly(long d);

// Real roots of p via bisection on sign changes; p squarefree preferred.
std::vector<double> real_roots(const IntPoly& p);
// All complex roots (balanced companion matrix, Eigen).
std::vector<std::complex<double>> complex_roots(const IntPoly& p);

// Laurent polynomial in t: c[i] is the coefficient of t^(lo+i).
// Invariant: c empty for zero, otherwise c.front() != 0 and c.back() != 0.
struct LaurentPoly {
    int lo = 0;
    std::vector<Int> c;

    LaurentPoly() = default;
    LaurentPoly(int low, std::vector<Int> coeffs) : lo(low), c(std::move(coeffs)) { trim(); }
    static LaurentPoly from_poly(const IntPoly& p, int shift = 0);

    void trim();
    bool is_zero() const { return c.empty(); }
    int low() const { return lo; }
    int high() const { return lo + static_cast<int>(c.size()) - 1; }
    Int coeff(int e) const;
    bool operator==(const LaurentPoly& o) const { return lo == o.lo && c == o.c; }

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;

    IntPoly poly_part() const;  // coefficients shifted so lowest exponent is 0
    std::complex<long double> eval_c(std::complex<long double> t) const;
    std::string str() const;
};

// p(t + 1/t) as a Laurent polynomial.
LaurentPoly substitute_t_plus_inv(const IntPoly& p);

// Exact solve A x = b over the rationals. A is row-major m x n with m >= n and
// full column rank expected; returns nullopt when inconsistent or rank-deficient.
std::optional<std::vector<Rat>> solve_rational(std::vector<std::vector<Rat>> A,
                                               std::vector<Rat> b);

// Exact characteristic polynomial det(xI - M) of a square integer matrix,
// by the Leverrier-Faddeev recurrence (all divisions exact).
IntPoly char_poly_matrix(const std::vector<std::vector<Int>>& m);

// Power sums p_k = sum root^k for k in [0, kmax], exact, monic p required.
std::vector<Int> power_sums(const IntPoly& p, int kmax);

}  // namespace cyclo
