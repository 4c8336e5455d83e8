#include "cpvol/geometry.hpp"

#include "cpvol/errors.hpp"

namespace cpvol {

CrossPolytope::CrossPolytope(RatVec c, Rational r) : center(std::move(c)), radius(std::move(r)) {
  if (center.empty()) throw InvalidInstance("cross-polytope needs dimension >= 1");
  if (radius < 0) throw InvalidInstance("cross-polytope radius must be nonnegative");
}

Rational cross_polytope_volume(int n, const Rational& r) {
  if (n < 1) throw InvalidInstance("dimension must be >= 1");
  if (r < 0) throw InvalidInstance("radius must be nonnegative");
  Rational out = rat_pow(r, n) * rat_pow(Rational(2), n);
  return out / Rational(factorial(n));
}

bool contains(const CrossPolytope& ball, const RatVec& x) {
  if (static_cast<int>(x.size()) != ball.dim())
    throw InvalidInstance("point/ball dimension mismatch");
  return l1_norm(sub(x, ball.center)) <= ball.radius;
}

NormalizedPair normalize_pair(const CrossPolytope& a, const CrossPolytope& b) {
  if (a.dim() != b.dim()) throw InvalidInstance("ball dimension mismatch");
  if (a.radius <= 0 || b.radius <= 0)
    throw PreconditionViolation("normalize_pair requires strictly positive radii");
  const int n = a.dim();
  NormalizedPair out;
  out.c.resize(n);
  for (int i = 0; i < n; ++i) out.c[i] = rat_abs(a.center[i] - b.center[i]) / a.radius;
  out.r = b.radius / a.radius;
  out.scale = rat_pow(a.radius, n);
  return out;
}

}  // namespace cpvol
