#include "cpvol/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "cpvol/errors.hpp"

namespace cpvol {

BigInt rat_floor(const Rational& q) {
  BigInt num = numerator(q), den = denominator(q);
  BigInt d = num / den;
  if (num < 0 && d * den != num) --d;
  return d;
}

BigInt rat_ceil(const Rational& q) { return -rat_floor(-q); }

BigInt round_half_away(const Rational& q) {
  if (q < 0) return -round_half_away(-q);
  BigInt fl = rat_floor(q);
  Rational frac = q - Rational(fl);
  return frac >= Rational(1, 2) ? fl + 1 : fl;
}

BigInt factorial(int n) {
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

Rational rat_pow(const Rational& base, int exp) {
  if (exp < 0) return 1 / rat_pow(base, -exp);
  Rational out = 1, b = base;
  for (int e = exp; e > 0; e >>= 1) {
    if (e & 1) out *= b;
    b *= b;
  }
  return out;
}

Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InvalidInstance("cannot parse rational from \"" + std::string(text) + "\"");
  };
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  text = text.substr(b, e - b);
  if (text.empty()) return fail();

  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return fail();
    BigInt n{std::string(num)};
    BigInt d{std::string(den)};
    if (d == 0) return fail();
    return Rational(n, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip.remove_prefix(1);
    if (fp.empty() || !is_int(fp) || (!ip.empty() && !is_int(ip))) return fail();
    BigInt whole = ip.empty() ? BigInt(0) : BigInt{std::string(ip)};
    BigInt frac{std::string(fp)};
    BigInt scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rational out = Rational(whole) + Rational(frac, scale);
    return neg ? Rational(-out) : out;
  }
  if (!is_int(text)) return fail();
  BigInt whole{std::string(text)};
  return Rational(whole);
}

std::string to_string(const Rational& q) {
  std::string out = numerator(q).str();
  if (denominator(q) != 1) out += "/" + denominator(q).str();
  return out;
}

std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Rational l1_norm(const RatVec& v) {
  Rational s = 0;
  for (const auto& x : v) s += rat_abs(x);
  return s;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw InvalidInstance("vector dimension mismatch");
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace cpvol
