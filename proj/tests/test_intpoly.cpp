#include <doctest.h>

#include <cmath>

#include "cyclo/intpoly.hpp"

using namespace cyclo;

TEST_CASE("elementary number theory") {
    CHECK(gcd_long(12, 18) == 6);
    CHECK(lcm_long(4, 6) == 12);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(420) == 96);
    CHECK(moebius(1) == 1);
    CHECK(moebius(6) == 1);
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    CHECK(radical(360) == 30);
    CHECK(omega(360) == 3);
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));

    auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<long, int>(2, 3));
    CHECK(f[1] == std::pair<long, int>(3, 2));
    CHECK(f[2] == std::pair<long, int>(5, 1));

    auto d = divisors(12);
    CHECK(d == std::vector<long>{1, 2, 3, 4, 6, 12});

    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_inv(3, 7) == 5);
    CHECK(mod_inv(7, 31) * 7 % 31 == 1);
}

TEST_CASE("polynomial arithmetic and normal form") {
    IntPoly xp1 = IntPoly::from_ints({1, 1});
    IntPoly xm1 = IntPoly::from_ints({-1, 1});
    CHECK(xp1 * xm1 == IntPoly::from_ints({-1, 0, 1}));
    CHECK((xp1 + xm1) == IntPoly::from_ints({0, 2}));
    CHECK((xp1 - xp1).is_zero());
    CHECK(IntPoly::from_ints({0, 0, 0}).is_zero());
    CHECK(IntPoly::x().degree() == 1);
    CHECK(IntPoly::monomial(3, 2) == IntPoly::from_ints({0, 0, 0, 2}));

    IntPoly p = IntPoly::from_ints({2, 0, -4, 6});
    CHECK(p.content() == 2);
    CHECK(p.primitive_part() == IntPoly::from_ints({1, 0, -2, 3}));
    CHECK((-p).monic_normalized() == p.primitive_part());
    CHECK(p.derivative() == IntPoly::from_ints({0, -8, 18}));
    CHECK(p.reversed() == IntPoly::from_ints({6, -4, 0, 2}));

    IntPoly sq = IntPoly::from_ints({-1, 0, 1});
    CHECK(sq.shifted(1) == IntPoly::from_ints({0, 2, 1}));
    CHECK(sq.eval_int(3) == 8);
    CHECK(sq.eval_rat(Rat(1, 2)) == Rat(-3, 4));
    CHECK(sq.eval_ld(2.0L) == doctest::Approx(3.0));

    auto even = IntPoly::from_ints({1, 0, -3, 0, 1}).even_part();
    REQUIRE(even.has_value());
    CHECK(*even == IntPoly::from_ints({1, -3, 1}));
    CHECK_FALSE(IntPoly::from_ints({1, 1}).even_part().has_value());

    CHECK(IntPoly::from_ints({-3, 0, 1}).str() == "x^2 - 3");
}

TEST_CASE("exact division and gcd") {
    IntPoly a = IntPoly::from_ints({-1, 0, 1});   // (x-1)(x+1)
    IntPoly b = IntPoly::from_ints({1, 1});
    auto q = exact_div(a, b);
    REQUIRE(q.has_value());
    CHECK(*q == IntPoly::from_ints({-1, 1}));
    CHECK_FALSE(exact_div(a, IntPoly::from_ints({1, 0, 0, 1})).has_value());
    CHECK_FALSE(exact_div(IntPoly::from_ints({1, 2}), IntPoly::from_ints({0, 2})).has_value());

    IntPoly p1 = IntPoly::from_ints({-1, 0, 1}) * IntPoly::from_ints({2, 1});
    IntPoly p2 = IntPoly::from_ints({1, 1}) * IntPoly::from_ints({2, 1});
    CHECK(poly_gcd(p1, p2) == IntPoly::from_ints({2, 3, 1}));
    CHECK(poly_gcd(a, IntPoly::from_ints({3, 0, 0, 1})).degree() == 0);
}

TEST_CASE("cyclotomic and Chebyshev families") {
    CHECK(cyclotomic_poly(1) == IntPoly::from_ints({-1, 1}));
    CHECK(cyclotomic_poly(2) == IntPoly::from_ints({1, 1}));
    CHECK(cyclotomic_poly(4) == IntPoly::from_ints({1, 0, 1}));
    CHECK(cyclotomic_poly(12) == IntPoly::from_ints({1, 0, -1, 0, 1}));
    CHECK(cyclotomic_poly(105).coeff(7) == -2);  // first coefficient outside {0,+-1}
    CHECK(cyclotomic_poly(105).degree() == 48);

    // product of Phi_d over d | n is x^n - 1
    IntPoly prod = IntPoly::from_ints({1});
    for (long d : divisors(12)) prod = prod * cyclotomic_poly(d);
    IntPoly xn(std::vector<Int>(13, 0));
    CHECK(prod.coeff(0) == -1);
    CHECK(prod.coeff(12) == 1);
    CHECK(prod.degree() == 12);
    for (int k = 1; k < 12; ++k) CHECK(prod.coeff(k) == 0);

    CHECK(chebyshev_v(0) == IntPoly::from_ints({2}));
    CHECK(chebyshev_v(1) == IntPoly::x());
    CHECK(chebyshev_v(3) == IntPoly::from_ints({0, -3, 0, 1}));
    CHECK(cos_minpoly(1) == IntPoly::from_ints({-2, 1}));
    CHECK(cos_minpoly(5) == IntPoly::from_ints({-1, 1, 1}));
    CHECK(cos_minpoly(7) == IntPoly::from_ints({-1, -2, 1, 1}));
}

TEST_CASE("root finding") {
    auto rr = real_roots(IntPoly::from_ints({-2, 0, 1}));
    REQUIRE(rr.size() == 2);
    CHECK(rr[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rr[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(real_roots(IntPoly::from_ints({1, 0, 1})).empty());

    auto cr = complex_roots(IntPoly::from_ints({1, 0, 0, 0, 1}));
    REQUIRE(cr.size() == 4);
    for (const auto& z : cr) CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("laurent polynomials") {
    LaurentPoly t = LaurentPoly::from_poly(IntPoly::x());
    LaurentPoly tinv(-1, {1});
    CHECK((t * tinv) == LaurentPoly(0, {1}));
    CHECK(t.coeff(1) == 1);
    CHECK(t.coeff(0) == 0);
    CHECK((t + tinv).low() == -1);
    CHECK((t + tinv).high() == 1);
    CHECK((t - t).is_zero());

    LaurentPoly s = substitute_t_plus_inv(IntPoly::from_ints({0, 0, 1}));
    CHECK(s == LaurentPoly(-2, {1, 0, 2, 0, 1}));
    CHECK(s.poly_part() == IntPoly::from_ints({1, 0, 2, 0, 1}));

    LaurentPoly shifted = LaurentPoly::from_poly(IntPoly::from_ints({1, 1}), -3);
    CHECK(shifted.low() == -3);
    CHECK(shifted.high() == -2);
}

TEST_CASE("exact linear algebra") {
    // x + y = 3, x - y = 1
    auto sol = solve_rational({{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}}, {Rat(3), Rat(1)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rat(2));
    CHECK((*sol)[1] == Rat(1));
    CHECK_FALSE(solve_rational({{Rat(1), Rat(1)}, {Rat(2), Rat(2)}}, {Rat(1), Rat(3)}).has_value());

    IntPoly cp = char_poly_matrix({{0, 1}, {1, 0}});
    CHECK(cp == IntPoly::from_ints({-1, 0, 1}));
    IntPoly cp3 = char_poly_matrix({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}});
    CHECK(cp3 == IntPoly::from_ints({-30, 31, -10, 1}));
}

TEST_CASE("power sums") {
    // roots 1 and 2
    IntPoly p = IntPoly::from_ints({2, -3, 1});
    auto ps = power_sums(p, 4);
    REQUIRE(ps.size() == 5);
    CHECK(ps[0] == 2);
    CHECK(ps[1] == 3);
    CHECK(ps[2] == 5);
    CHECK(ps[3] == 9);
    CHECK(ps[4] == 17);
}
