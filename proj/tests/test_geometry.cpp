#include <doctest.h>

#include <random>

#include "cpvol/errors.hpp"
#include "cpvol/geometry.hpp"
#include "cpvol/oracles.hpp"
#include "cpvol/vpolytope.hpp"

using namespace cpvol;

namespace {

RatVec rv(std::initializer_list<Rational> xs) { return RatVec(xs); }

}  // namespace

TEST_CASE("l1 norm") {
  CHECK(l1_norm(rv({0, 0, 0})) == 0);
  CHECK(l1_norm(rv({1, -2, 3})) == 6);
  CHECK(l1_norm(rv({1, 1})) == 2);
}

TEST_CASE("cross-polytope volume formula") {
  CHECK(cross_polytope_volume(2, Rational(1)) == 2);
  CHECK(cross_polytope_volume(1, Rational(1, 2)) == 1);
  CHECK(cross_polytope_volume(3, Rational(1)) == Rational(4, 3));
}

TEST_CASE("membership") {
  const CrossPolytope unit(rv({0, 0}), 1);
  CHECK(contains(unit, rv({1, 0})));
  CHECK_FALSE(contains(unit, rv({Rational(3, 5), Rational(3, 5)})));
  const CrossPolytope shifted(rv({1, 1}), 1);
  CHECK(contains(shifted, rv({1, 1})));
  CHECK_THROWS_AS(contains(unit, rv({1, 0, 0})), InvalidInstance);
}

TEST_CASE("normalize_pair on the stated examples") {
  {
    const auto norm = normalize_pair(CrossPolytope(rv({0, 0}), 2), CrossPolytope(rv({0, 0}), 2));
    CHECK(norm.c == rv({0, 0}));
    CHECK(norm.r == 1);
    CHECK(norm.scale == 4);
  }
  {
    const auto norm = normalize_pair(CrossPolytope(rv({0}), 2), CrossPolytope(rv({1}), 1));
    CHECK(norm.c == rv({Rational(1, 2)}));
    CHECK(norm.r == Rational(1, 2));
    CHECK(norm.scale == 2);
  }
  {
    const auto norm = normalize_pair(CrossPolytope(rv({1, 0}), 1), CrossPolytope(rv({0, 1}), 1));
    CHECK(norm.c == rv({1, 1}));
    CHECK(norm.r == 1);
    CHECK(norm.scale == 1);
  }
  CHECK_THROWS_AS(normalize_pair(CrossPolytope(rv({0}), 0), CrossPolytope(rv({0}), 1)),
                  PreconditionViolation);
}

TEST_CASE("normalize_pair preserves the intersection volume exactly") {
  std::mt19937_64 rng(42);
  auto coin = [&rng](long lo, long hi) {
    return static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)) + lo;
  };
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      RatVec c1(n), c2(n);
      for (auto& x : c1) x = Rational(coin(-4, 4), 4);
      for (auto& x : c2) x = Rational(coin(-4, 4), 4);
      const CrossPolytope a(c1, Rational(coin(1, 8), 4));
      const CrossPolytope b(c2, Rational(coin(1, 8), 4));
      const auto norm = normalize_pair(a, b);
      const Rational direct = exact_intersection_volume({a, b});
      const Rational via_canon =
          norm.scale * exact_intersection_volume({CrossPolytope(RatVec(n, Rational(0)), 1),
                                                  CrossPolytope(norm.c, norm.r)});
      CHECK(direct == via_canon);
    }
  }
}

TEST_CASE("formula volume matches the exact v-polytope volume") {
  for (int n = 2; n <= 4; ++n) {
    const Rational r(3, 2);
    std::vector<RatVec> verts;
    for (int i = 0; i < n; ++i) {
      RatVec e(n, Rational(0));
      e[i] = r;
      verts.push_back(e);
      e[i] = -r;
      verts.push_back(e);
    }
    CHECK(exact_volume(VPolytopeInstance(verts)) == cross_polytope_volume(n, r));
  }
}
