#pragma once

#include "cpvol/rational.hpp"

namespace cpvol {

// L1-ball: { x : ||x - center||_1 <= radius }.
struct CrossPolytope {
  RatVec center;
  Rational radius;

  CrossPolytope(RatVec c, Rational r);
  int dim() const { return static_cast<int>(center.size()); }
};

// 2^n r^n / n!
Rational cross_polytope_volume(int n, const Rational& r);

bool contains(const CrossPolytope& ball, const RatVec& x);

// Canonical form of a ball pair: Vol(C1 ∩ C2) = scale * Vol(C(0,1) ∩ C(c,r))
// with c >= 0 componentwise (coordinate reflections absorbed eagerly).
struct NormalizedPair {
  RatVec c;
  Rational r;
  Rational scale;  // r1^n
};

NormalizedPair normalize_pair(const CrossPolytope& a, const CrossPolytope& b);

}  // namespace cpvol
