#include <doctest.h>

#include <cmath>

#include "cyclo/invariants.hpp"

using namespace cyclo;

TEST_CASE("field trace") {
    CHECK(trace(CycInt::from_int(3)) == 3);
    CHECK(trace(CycInt::root_of_unity(5, 1)) == -1);   // trace of zeta_n is mu(n)
    CHECK(trace(CycInt::root_of_unity(12, 1)) == 0);
    CHECK(trace(CycInt::root_of_unity(15, 1)) == 1);

    CycInt b = CycInt::from_int(1) + CycInt::root_of_unity(5, 1);
    CHECK(trace(b) == 3);  // 4*1 + (-1)
}

TEST_CASE("mean square of embeddings") {
    CHECK(m_invariant(CycInt::from_int(2)) == Rat(4));
    CHECK(m_invariant(CycInt::root_of_unity(7, 3)) == Rat(1));
    CHECK(m_invariant(CycInt::from_int(1) + CycInt::root_of_unity(5, 1)) == Rat(3, 2));
    CHECK(m_invariant(half_one_plus_sqrt(5)) == Rat(3, 2));
    CHECK(m_invariant(half_one_plus_sqrt(13)) == Rat(7, 2));

    // additive over orthogonal pieces: |1 + z7|^2 averages to 2 + mu(7)*2/6
    CycInt c = CycInt::from_int(1) + CycInt::root_of_unity(7, 1);
    CHECK(m_invariant(c) == Rat(2) - Rat(2, 6));

    // galois action preserves the mean square
    CycInt b = CycInt::root_of_unity(35, 3) + CycInt::root_of_unity(35, 12) * Int(2);
    CHECK(m_invariant(b) == m_invariant(b.galois(2)));
    CHECK(m_invariant(b) == m_invariant(b.conj()));
}

TEST_CASE("certified house") {
    CycInt b = CycInt::from_int(1) + CycInt::root_of_unity(5, 1);
    HouseValue h = house(b);
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(h.radius <= 1e-12L);
    CHECK(std::abs((double)h.value - phi) <= 1e-12);

    HouseValue h2 = house(CycInt::from_int(-7));
    CHECK(std::abs((double)h2.value - 7.0) <= 1e-12);

    // house is galois invariant
    HouseValue h3 = house(b.galois(2));
    CHECK(std::abs((double)(h3.value - h.value)) <= 2e-12);
}

TEST_CASE("minimal polynomial") {
    CHECK(min_poly(CycInt::from_int(7)) == IntPoly::from_ints({-7, 1}));
    CHECK(min_poly(half_one_plus_sqrt(5)) == IntPoly::from_ints({-1, -1, 1}));
    CHECK(min_poly(CycInt::root_of_unity(5, 2)) == cyclotomic_poly(5));

    CycInt b = CycInt::from_int(1) + CycInt::root_of_unity(5, 1);
    IntPoly mp = min_poly(b);
    CHECK(mp == IntPoly::from_ints({1, -2, 4, -3, 1}));

    // the minimal polynomial annihilates the numeric embedding
    auto v = b.embed(1);
    CHECK(std::abs(mp.eval_c(v)) <= 1e-9L);
}

TEST_CASE("root of unity decomposition bound") {
    CycInt b = CycInt::from_int(1) + CycInt::root_of_unity(5, 1);
    auto w = n_invariant_upto(b, 6, 120);
    REQUIRE(w.has_value());
    CHECK(w->exponents.size() == 2);

    // witness reconstructs the element
    CycInt s = CycInt::zero();
    for (long e : w->exponents) s = s + CycInt::root_of_unity(w->order, e);
    CHECK(s == b);

    // a primitive root is one root
    auto w1 = n_invariant_upto(CycInt::root_of_unity(12, 5), 6, 120);
    REQUIRE(w1.has_value());
    CHECK(w1->exponents.size() == 1);

    // 5*(1 + sqrt(13))/2 has house > 2, so it is not a sum of two roots
    auto none = n_invariant_upto(half_one_plus_sqrt(13) * Int(5), 2, 60);
    CHECK_FALSE(none.has_value());
}

TEST_CASE("invariant report") {
    CycInt b = CycInt::from_int(1) + CycInt::root_of_unity(5, 1);
    InvariantReport r = invariant_report(b, 6, 120);
    CHECK(r.value_text == "1 + 1*z @ 5");
    CHECK(r.conductor == 5);
    CHECK(r.m_value == "3/2");
    CHECK(r.house_value == doctest::Approx(1.6180339887498949).epsilon(1e-12));
    CHECK(r.house_radius <= 1e-12);
    CHECK(r.min_poly == "x^4 - 3*x^3 + 4*x^2 - 2*x + 1");
    CHECK(r.min_poly_coeffs == std::vector<long long>{1, -2, 4, -3, 1});
    CHECK(r.n_upper == 2);
    CHECK(r.witness_order == 120);

    auto j = r.to_json();
    CHECK(j.at("house").get<double>() == doctest::Approx(r.house_value));
    CHECK(j.at("m").get<std::string>() == "3/2");
    CHECK(j.at("n_upper").get<int>() == 2);

    CHECK(rat_str(Rat(7, 2)) == "7/2");
    CHECK(rat_str(Rat(4)) == "4");
}
