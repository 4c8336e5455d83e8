#include <doctest.h>

#include <algorithm>
#include <random>

#include "cpvol/errors.hpp"
#include "cpvol/oracles.hpp"

using namespace cpvol;

namespace {

CrossPolytope unit_ball(int n) { return CrossPolytope(RatVec(static_cast<size_t>(n), Rational(0)), 1); }

}  // namespace

TEST_CASE("single ball volumes for n <= 4") {
  for (int n = 1; n <= 4; ++n)
    CHECK(exact_intersection_volume({unit_ball(n)}) == cross_polytope_volume(n, Rational(1)));
  CHECK_THROWS_AS(exact_intersection_volume({unit_ball(5)}), PreconditionViolation);
}

TEST_CASE("intersection volumes on the stated examples") {
  CHECK(exact_intersection_volume({unit_ball(1), CrossPolytope({Rational(3, 10)}, Rational(1, 2))}) == 1);
  CHECK(exact_intersection_volume(
            {unit_ball(2), CrossPolytope({Rational(3), Rational(0)}, Rational(1))}) == 0);
}

TEST_CASE("intersection volume ignores ball order") {
  const CrossPolytope a = unit_ball(2);
  const CrossPolytope b({Rational(1, 5), Rational(1, 10)}, Rational(1, 2));
  const CrossPolytope c({Rational(0), Rational(1, 4)}, Rational(3, 4));
  CHECK(exact_intersection_volume({a, b, c}) == exact_intersection_volume({c, a, b}));
}

TEST_CASE("hull volumes on the stated examples") {
  std::vector<RatVec> diamond{{Rational(1), Rational(0)},
                              {Rational(-1), Rational(0)},
                              {Rational(0), Rational(1)},
                              {Rational(0), Rational(-1)}};
  CHECK(exact_hull_volume(diamond) == 2);
  auto with_top = diamond;
  with_top.push_back({Rational(1), Rational(1)});
  CHECK(exact_hull_volume(with_top) == Rational(5, 2));
  const std::vector<RatVec> triangle{{Rational(0), Rational(0)},
                                     {Rational(1), Rational(0)},
                                     {Rational(0), Rational(1)}};
  CHECK(exact_hull_volume(triangle) == Rational(1, 2));
  const std::vector<RatVec> flat{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
  CHECK(exact_hull_volume(flat) == 0);
}

TEST_CASE("hull volume tolerates redundant input points") {
  // (1,0) is inside the hull of the rest
  std::vector<RatVec> pts{{Rational(1), Rational(0)},  {Rational(-1), Rational(0)},
                          {Rational(0), Rational(1)},  {Rational(0), Rational(-1)},
                          {Rational(2), Rational(1)}};
  CHECK(exact_hull_volume(pts) == 3);
  CHECK(exact_hull_volume(pts) == exact_intersection_volume({unit_ball(2)}) + 1);
}

TEST_CASE("hull oracle equals intersection oracle on the unit ball") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<RatVec> verts;
    for (int i = 0; i < n; ++i) {
      RatVec e(static_cast<size_t>(n), Rational(0));
      e[static_cast<size_t>(i)] = 1;
      verts.push_back(e);
      e[static_cast<size_t>(i)] = -1;
      verts.push_back(e);
    }
    CHECK(exact_hull_volume(verts) == exact_intersection_volume({unit_ball(n)}));
  }
}

TEST_CASE("stage profiles: piecewise integration equals the boxed H-polytope") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 12; ++trial) {
    const Rational c1(static_cast<long>(rng() % 9), 16);
    const Rational c2(static_cast<long>(rng() % 9), 16);
    const Rational u(static_cast<long>(rng() % 20) + 1, 12);
    const Rational v(static_cast<long>(rng() % 20) + 1, 12);
    const Rational direct = stage_profile_area(u, v, c1, c2);
    const Rational via_hpoly = stage_profile_volume({c1, c2}, u, v, 2);
    CHECK(direct == via_hpoly);
  }
}

TEST_CASE("monte carlo sampler") {
  SUBCASE("full box hits every sample") {
    const auto est = mc_volume({unit_ball(1)}, 5000, 3);
    CHECK(est.estimate == 2.0);
    CHECK(est.half_width == 0.0);
  }
  SUBCASE("estimates stay in [0, 2^n]") {
    const auto est = mc_volume({unit_ball(2), CrossPolytope({Rational(1, 5), Rational(1, 5)},
                                                            Rational(1, 2))},
                               20000, 9);
    CHECK(est.estimate >= 0.0);
    CHECK(est.estimate <= 4.0);
  }
  SUBCASE("bit reproducible for a fixed seed") {
    const auto a = mc_volume({unit_ball(2)}, 10000, 424242);
    const auto b = mc_volume({unit_ball(2)}, 10000, 424242);
    CHECK(a.estimate == b.estimate);
    CHECK(a.half_width == b.half_width);
  }
  SUBCASE("statistical consistency on one instance") {
    const CrossPolytope second({Rational(1, 5), Rational(1, 5)}, Rational(1, 2));
    const double exact = to_double(exact_intersection_volume({unit_ball(2), second}));
    const auto est = mc_volume({unit_ball(2), second}, 1000000, 12);
    CHECK(std::abs(est.estimate - exact) <= est.half_width);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(mc_volume({CrossPolytope({Rational(1)}, Rational(1))}, 100, 1),
                    PreconditionViolation);
    CHECK_THROWS_AS(mc_volume({unit_ball(1)}, 0, 1), PreconditionViolation);
  }
}

TEST_CASE("sign-vector counting") {
  CHECK(count_large_sets({1, 1}).large_sets == 1);
  CHECK(count_large_sets({1, 1}).partitions == 2);
  CHECK(count_large_sets({1, 1, 2}).large_sets == 3);
  CHECK(count_large_sets({1, 1, 2}).partitions == 2);
  CHECK_THROWS_AS(count_large_sets({1, 1, 1}), PreconditionViolation);
  CHECK_THROWS_AS(count_large_sets({0, 2}), PreconditionViolation);
}

TEST_CASE("reduction identity on the stated examples") {
  for (auto a : {std::vector<long long>{1, 1}, {1, 1, 2}, {2, 2}}) {
    const auto check = hardness_reduction_check(a);
    CHECK(check.pass);
    CHECK(check.lhs == check.rhs);
    CHECK(check.epsilon < check.delta);
  }
  CHECK(hardness_reduction_check({1, 1}).lhs == 1);
  CHECK(hardness_reduction_check({1, 1, 2}).lhs == 3);
  CHECK(hardness_reduction_check({2, 2}).lhs == 1);
  CHECK_THROWS_AS(hardness_reduction_check({1, 1, 1, 1}), PreconditionViolation);
}
