#include <doctest.h>

#include "cpvol/errors.hpp"
#include "cpvol/rational.hpp"

using namespace cpvol;

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("5/16") == Rational(5, 16));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(parse_rational(" 2/4 ") == Rational(1, 2));
  CHECK(parse_rational(".5") == Rational(1, 2));
}

TEST_CASE("parse_rational rejects junk") {
  CHECK_THROWS_AS(parse_rational(""), InvalidInstance);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInstance);
  CHECK_THROWS_AS(parse_rational("a/b"), InvalidInstance);
  CHECK_THROWS_AS(parse_rational("1.2.3"), InvalidInstance);
  CHECK_THROWS_AS(parse_rational("1e3"), InvalidInstance);
}

TEST_CASE("floor, ceil and rounding") {
  CHECK(rat_floor(Rational(7, 2)) == 3);
  CHECK(rat_floor(Rational(-7, 2)) == -4);
  CHECK(rat_ceil(Rational(7, 2)) == 4);
  CHECK(rat_ceil(Rational(-7, 2)) == -3);
  CHECK(rat_floor(Rational(4)) == 4);
  CHECK(round_half_away(Rational(5, 2)) == 3);
  CHECK(round_half_away(Rational(-5, 2)) == -3);
  CHECK(round_half_away(Rational(49, 20)) == 2);
  CHECK(round_half_away(Rational(0)) == 0);
}

TEST_CASE("string round trip") {
  CHECK(to_string(Rational(5, 16)) == "5/16");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK(parse_rational(to_string(Rational(123456789, 987654321))) ==
        Rational(123456789, 987654321));
}

TEST_CASE("powers and factorials") {
  CHECK(rat_pow(Rational(1, 2), 3) == Rational(1, 8));
  CHECK(rat_pow(Rational(2), -2) == Rational(1, 4));
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
}
