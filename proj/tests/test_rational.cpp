#include "doctest.h"

#include <stdexcept>

#include "facloc/rational.hpp"

using facloc::Rational;

TEST_CASE("rational values are kept in lowest terms") {
    CHECK(Rational(6, 8) == Rational(3, 4));
    CHECK(Rational(3, -6).to_string() == "-1/2");
    CHECK(Rational(0, 5).to_string() == "0/1");
    CHECK(Rational(7).to_string() == "7/1");
}

TEST_CASE("rational arithmetic and ordering") {
    CHECK(Rational(4, 3) + Rational(1, 100) == Rational(403, 300));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(13, 4) / Rational(13, 4) == Rational(1));
    CHECK(Rational(73, 23) < Rational(13, 4));
    CHECK(Rational(17, 4) > Rational(4));
    CHECK(Rational(7, 3).ceil() == 3);
    CHECK(Rational(9, 3).ceil() == 3);
    CHECK(Rational(-7, 3).ceil() == -2);
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("17/4") == Rational(17, 4));
    CHECK(Rational::parse("2") == Rational(2));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("3/"), std::invalid_argument);
    CHECK(facloc::format_with_decimal(Rational(17, 4)) == "17/4 (4.250000)");
}
