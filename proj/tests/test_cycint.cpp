#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cyclo/cycint.hpp"

using namespace cyclo;

TEST_CASE("conductor normalization") {
    CHECK(normalize_conductor(1) == 1);
    CHECK(normalize_conductor(2) == 1);
    CHECK(normalize_conductor(6) == 3);
    CHECK(normalize_conductor(10) == 5);
    CHECK(normalize_conductor(12) == 12);

    // zeta_6 = -zeta_3^2 lives over conductor 3
    CycInt z6 = CycInt::root_of_unity(6, 1);
    CHECK(z6.conductor() == 3);
    CycInt z3 = CycInt::root_of_unity(3, 1);
    CHECK(z6 == -(z3 * z3));
}

TEST_CASE("ring arithmetic") {
    CycInt one = CycInt::from_int(1);
    CycInt z5 = CycInt::root_of_unity(5, 1);

    CHECK(CycInt::zero().is_zero());
    CHECK(one.is_integer());
    CHECK(one.integer_value() == 1);
    CHECK((one + CycInt::from_int(2)).integer_value() == 3);
    CHECK((z5 * CycInt::root_of_unity(5, 4)).integer_value() == 1);

    // full sum of 5th roots vanishes
    CycInt s = CycInt::zero();
    for (long e = 0; e < 5; ++e) s = s + CycInt::root_of_unity(5, e);
    CHECK(s.is_zero());

    CHECK((z5 * Int(3) - z5 * Int(3)).is_zero());
    CHECK(-(-z5) == z5);
    CHECK(z5 != one);

    // mixed conductors lift to the common field
    CycInt z3 = CycInt::root_of_unity(3, 1);
    CHECK((z3 * z5).conductor() == 15);
    CHECK(common_conductor(z3, z5) == 15);
}

TEST_CASE("reality and integrality predicates") {
    CycInt z7 = CycInt::root_of_unity(7, 1);
    CycInt pair = z7 + z7.conj();
    CHECK(pair.is_real());
    CHECK_FALSE(pair.is_integer());
    CHECK_FALSE(z7.is_real());

    CycInt full = CycInt::zero();
    for (long e = 1; e < 5; ++e) full = full + CycInt::root_of_unity(5, e);
    CHECK(full.is_integer());
    CHECK(full.integer_value() == -1);
}

TEST_CASE("galois action") {
    CycInt z5 = CycInt::root_of_unity(5, 1);
    CycInt b = CycInt::from_int(1) + z5;

    CHECK(b.galois(2) == CycInt::from_int(1) + CycInt::root_of_unity(5, 2));
    CHECK(b.conj() == b.galois(4));
    CHECK(b.galois(2).galois(3) == b.galois(6 % 5));
    CHECK(b.galois(1) == b);

    // the action is a ring homomorphism
    CycInt c = z5 * Int(2) - CycInt::from_int(3);
    CHECK((b + c).galois(3) == b.galois(3) + c.galois(3));
    CHECK((b * c).galois(3) == b.galois(3) * c.galois(3));
}

TEST_CASE("lift and reduce") {
    CycInt z5 = CycInt::root_of_unity(5, 1);
    CycInt b = CycInt::from_int(2) + z5;
    CycInt lifted = b.lifted(35);
    CHECK(lifted.conductor() == 35);
    CHECK(lifted.reduced() == b);
    CHECK(lifted == b);  // equality compares over the common field
    CHECK(CycInt::from_int(4).lifted(12).reduced().conductor() == 1);
}

TEST_CASE("numeric embedding") {
    CycInt b = CycInt::from_int(1) + CycInt::root_of_unity(5, 1);
    long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
    CHECK(std::abs(b.embed(1)) == doctest::Approx((double)phi).epsilon(1e-15));
    CHECK(std::abs(b.embed(2)) == doctest::Approx((double)(phi - 1)).epsilon(1e-15));
}

TEST_CASE("golden element") {
    CycInt h = half_one_plus_sqrt(5);
    CHECK(h.conductor() == 5);
    CHECK((h * h - h - CycInt::from_int(1)).is_zero());
    CHECK(h.is_real());

    CycInt h13 = half_one_plus_sqrt(13);
    CHECK(h13.conductor() == 13);
    CHECK((h13 * h13 - h13 - CycInt::from_int(3)).is_zero());
}

TEST_CASE("text and json round trips") {
    CycInt b = CycInt::from_int(1) + CycInt::root_of_unity(5, 1);
    CHECK(b.to_text() == "1 + 1*z @ 5");
    CHECK(CycInt::parse_text(b.to_text()) == b);
    CHECK(CycInt::parse_text("1 + 1*z^1 @ 5") == b);

    CycInt c = CycInt::root_of_unity(12, 7) * Int(-3) + CycInt::from_int(2);
    CHECK(CycInt::parse_text(c.to_text()) == c);
    CHECK(CycInt::from_json(c.to_json()) == c);
    CHECK(CycInt::from_json(CycInt::zero().to_json()).is_zero());

    CHECK_THROWS_AS(CycInt::parse_text("rubbish @@ 3"), std::exception);
    CHECK_THROWS_AS(CycInt::parse_text(""), std::exception);

    CHECK(b.key() != c.key());
    CHECK(b.key() == (CycInt::root_of_unity(5, 1) + CycInt::from_int(1)).key());
}
