#pragma once

#include <cstdint>
#include <vector>

#include "cpvol/geometry.hpp"
#include "cpvol/rational.hpp"

namespace cpvol {

inline constexpr int kMaxOracleDim = 4;

// <a, x> <= b
struct HalfSpace {
  RatVec a;
  Rational b;
};

// All basic solutions of n-subsets that satisfy every inequality; these are
// exactly the vertices of the (possibly empty) H-polytope.
std::vector<RatVec> hpoly_vertices(const std::vector<HalfSpace>& halfspaces, int dim);

// Exact volume of conv(points); tolerates duplicate points, interior points
// and facets carrying more than `dim` points. Returns 0 for flat sets.
Rational hull_volume(std::vector<RatVec> points, int dim);

Rational exact_polytope_volume(const std::vector<HalfSpace>& halfspaces, int dim);

// Exact volume of an intersection of L1-balls, dim <= 4.
Rational exact_intersection_volume(const std::vector<CrossPolytope>& balls);

// Same, additionally clipped to the sampling box [-1,1]^dim.
Rational exact_boxed_intersection_volume(const std::vector<CrossPolytope>& balls);

Rational exact_hull_volume(const std::vector<RatVec>& points);

// Stage profiles of the two-ball convolution, exact. `dims` is the number of
// integrated coordinates; `c` supplies at least that many offsets.
Rational stage_profile_interval(const Rational& u, const Rational& v, const Rational& c1);
Rational stage_profile_area(const Rational& u, const Rational& v, const Rational& c1,
                            const Rational& c2);
Rational stage_profile_volume(const RatVec& c, const Rational& u, const Rational& v, int dims);

// Stage profile of the k-ball convolution via the boxed H-polytope route.
Rational k_stage_profile_volume(const std::vector<RatVec>& centers, const RatVec& u, int dims);

struct MCEstimate {
  double estimate = 0.0;
  double half_width = 0.0;  // 95% confidence
  long long samples = 0;
  std::uint64_t seed = 0;
};

// Rejection sampling over [-1,1]^n; requires the first ball to be C(0,1).
MCEstimate mc_volume(const std::vector<CrossPolytope>& balls, long long samples,
                     std::uint64_t seed);

struct LargeSetCount {
  long long large_sets = 0;  // |{sigma in {-1,1}^n : <sigma, a> > 0}|
  long long partitions = 0;  // 2^n - 2 * large_sets
};

LargeSetCount count_large_sets(const std::vector<long long>& a);

struct ReductionCheck {
  long long lhs = 0;
  long long rhs = 0;
  bool pass = false;
  Rational delta;
  Rational epsilon;
};

// Desk-scale check of the counting reduction: the rounded scaled shell
// volume must equal the brute-force sign-vector count.
ReductionCheck hardness_reduction_check(const std::vector<long long>& a);

}  // namespace cpvol
