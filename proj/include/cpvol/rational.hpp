#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cpvol {

// Plain-value (no expression-template) arbitrary-precision types so the
// results of arithmetic compose with std::min/max, std::sort and auto.
using BigInt =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

BigInt rat_floor(const Rational& q);
BigInt rat_ceil(const Rational& q);

// Nearest integer, ties rounded away from zero.
BigInt round_half_away(const Rational& q);

BigInt factorial(int n);

Rational rat_pow(const Rational& base, int exp);
Rational rat_abs(const Rational& q);

double to_double(const Rational& q);

// Accepts integers ("-3"), fractions ("5/16") and plain decimals ("0.25").
// Throws InvalidInstance on anything else.
Rational parse_rational(std::string_view text);

// "p/q" when the denominator is not 1, otherwise "p".
std::string to_string(const Rational& q);

std::string format_decimal(double x);

Rational l1_norm(const RatVec& v);
RatVec sub(const RatVec& a, const RatVec& b);

}  // namespace cpvol
