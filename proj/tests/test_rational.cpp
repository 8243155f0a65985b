#include <catch2/catch_amalgamated.hpp>

#include "fracfem/rational.hpp"

using fracfem::Rational;

TEST_CASE("normalization and sign handling") {
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(-2, 6) == Rational(1, -3));
    CHECK(Rational(0, 7) == Rational(0, 1));
    CHECK(Rational(4, -6).num() == -2);
    CHECK(Rational(4, -6).den() == 3);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(-a == Rational(-1, 3));
    CHECK((Rational(1, 3) + Rational(2, 3)) == Rational(1, 1));
}

TEST_CASE("ordering agrees with real values") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(2, 3) > Rational(1, 2));
    CHECK(Rational(7, 9) <= Rational(7, 9));
    CHECK(Rational(-1, 2) < Rational(0, 1));
}

TEST_CASE("to_double is the correctly rounded quotient") {
    CHECK(Rational(1, 3).to_double() == 1.0 / 3.0);
    // equal reals reduce to the same double regardless of representation
    CHECK(Rational(3, 9).to_double() == Rational(1, 3).to_double());
    CHECK(Rational(243, 729).to_double() == 243.0 / 729.0);
}

TEST_CASE("overflow is an error, not wraparound") {
    const Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}
