#include <doctest.h>

#include "cpvol/linalg.hpp"

using namespace cpvol;

TEST_CASE("solve and determinant") {
  RatMat a{{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
  auto x = solve_linear(a, {Rational(5), Rational(10)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 3);
  CHECK(determinant(a) == 5);

  RatMat singular{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  CHECK_FALSE(solve_linear(singular, {Rational(1), Rational(1)}).has_value());
  CHECK(determinant(singular) == 0);
}

TEST_CASE("determinant sign flips under row swap") {
  RatMat a{{Rational(0), Rational(1), Rational(0)},
           {Rational(1), Rational(0), Rational(0)},
           {Rational(0), Rational(0), Rational(1)}};
  CHECK(determinant(a) == -1);
}

TEST_CASE("rank") {
  CHECK(matrix_rank({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}) == 1);
  CHECK(matrix_rank({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}) == 2);
  CHECK(matrix_rank({{Rational(0), Rational(0)}}) == 0);
}
