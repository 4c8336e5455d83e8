#include "cpvol/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "cpvol/errors.hpp"
#include "cpvol/linalg.hpp"

namespace cpvol {

namespace {

void for_each_subset(int total, int pick, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> subset(static_cast<size_t>(pick));
  for (int i = 0; i < pick; ++i) subset[static_cast<size_t>(i)] = i;
  if (pick > total) return;
  while (true) {
    fn(subset);
    int pos = pick - 1;
    while (pos >= 0 && subset[static_cast<size_t>(pos)] == total - pick + pos) --pos;
    if (pos < 0) break;
    ++subset[static_cast<size_t>(pos)];
    for (int j = pos + 1; j < pick; ++j)
      subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
  }
}

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void append_ball_halfspaces(std::vector<HalfSpace>& out, const CrossPolytope& ball) {
  const int n = ball.dim();
  const long signs = 1L << n;
  for (long mask = 0; mask < signs; ++mask) {
    HalfSpace h;
    h.a.resize(static_cast<size_t>(n));
    Rational shift = 0;
    for (int j = 0; j < n; ++j) {
      const Rational s = (mask >> j) & 1 ? Rational(1) : Rational(-1);
      h.a[static_cast<size_t>(j)] = s;
      shift += s * ball.center[static_cast<size_t>(j)];
    }
    h.b = ball.radius + shift;
    out.push_back(std::move(h));
  }
}

}  // namespace

std::vector<RatVec> hpoly_vertices(const std::vector<HalfSpace>& halfspaces, int dim) {
  if (dim < 1 || dim > kMaxOracleDim)
    throw PreconditionViolation("vertex enumeration supports dimensions 1..4");
  for (const auto& h : halfspaces)
    if (static_cast<int>(h.a.size()) != dim) throw InvalidInstance("half-space dimension mismatch");

  std::set<RatVec> verts;
  const int total = static_cast<int>(halfspaces.size());
  for_each_subset(total, dim, [&](const std::vector<int>& subset) {
    RatMat rows;
    RatVec rhs;
    rows.reserve(static_cast<size_t>(dim));
    for (int idx : subset) {
      rows.push_back(halfspaces[static_cast<size_t>(idx)].a);
      rhs.push_back(halfspaces[static_cast<size_t>(idx)].b);
    }
    auto sol = solve_linear(std::move(rows), std::move(rhs));
    if (!sol) return;
    for (const auto& h : halfspaces)
      if (dot(h.a, *sol) > h.b) return;
    verts.insert(std::move(*sol));
  });
  return {verts.begin(), verts.end()};
}

Rational hull_volume(std::vector<RatVec> points, int dim) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (static_cast<int>(points.size()) < dim + 1) return Rational(0);
  if (dim == 1) {
    Rational lo = points.front()[0], hi = points.front()[0];
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }

  const size_t count = points.size();
  RatVec centroid(static_cast<size_t>(dim), Rational(0));
  for (const auto& p : points)
    for (int j = 0; j < dim; ++j) centroid[static_cast<size_t>(j)] += p[static_cast<size_t>(j)];
  for (auto& x : centroid) x /= Rational(static_cast<long>(count));
  for (auto& p : points)
    for (int j = 0; j < dim; ++j) p[static_cast<size_t>(j)] -= centroid[static_cast<size_t>(j)];

  std::set<RatVec> normals;
  for_each_subset(static_cast<int>(count), dim, [&](const std::vector<int>& subset) {
    RatMat rows;
    rows.reserve(static_cast<size_t>(dim));
    for (int idx : subset) rows.push_back(points[static_cast<size_t>(idx)]);
    auto normal = solve_linear(std::move(rows), RatVec(static_cast<size_t>(dim), Rational(1)));
    if (!normal) return;
    for (const auto& p : points)
      if (dot(*normal, p) > 1) return;
    normals.insert(std::move(*normal));
  });

  Rational total = 0;
  for (const auto& normal : normals) {
    std::vector<RatVec> face;
    for (const auto& p : points)
      if (dot(normal, p) == 1) face.push_back(p);
    int drop = 0;
    for (int j = 1; j < dim; ++j)
      if (rat_abs(normal[static_cast<size_t>(j)]) > rat_abs(normal[static_cast<size_t>(drop)]))
        drop = j;
    std::vector<RatVec> proj;
    proj.reserve(face.size());
    for (const auto& p : face) {
      RatVec q;
      q.reserve(static_cast<size_t>(dim) - 1);
      for (int j = 0; j < dim; ++j)
        if (j != drop) q.push_back(p[static_cast<size_t>(j)]);
      proj.push_back(std::move(q));
    }
    // Cone over the facet from the origin: the 1/||a|| height cancels the
    // ||a||/|a_drop| area distortion of the axis projection.
    total += hull_volume(std::move(proj), dim - 1) /
             (rat_abs(normal[static_cast<size_t>(drop)]) * dim);
  }
  return total;
}

Rational exact_polytope_volume(const std::vector<HalfSpace>& halfspaces, int dim) {
  return hull_volume(hpoly_vertices(halfspaces, dim), dim);
}

namespace {

Rational intersection_volume_impl(const std::vector<CrossPolytope>& balls, bool boxed) {
  if (balls.empty()) throw PreconditionViolation("need at least one ball");
  const int n = balls[0].dim();
  if (n > kMaxOracleDim)
    throw PreconditionViolation("exact intersection oracle refuses dimensions above 4");
  for (const auto& b : balls)
    if (b.dim() != n) throw InvalidInstance("ball dimension mismatch");
  std::vector<HalfSpace> hs;
  for (const auto& b : balls) append_ball_halfspaces(hs, b);
  if (boxed) {
    for (int j = 0; j < n; ++j) {
      HalfSpace lo, hi;
      lo.a.assign(static_cast<size_t>(n), Rational(0));
      hi.a.assign(static_cast<size_t>(n), Rational(0));
      lo.a[static_cast<size_t>(j)] = Rational(-1);
      hi.a[static_cast<size_t>(j)] = Rational(1);
      lo.b = hi.b = Rational(1);
      hs.push_back(std::move(lo));
      hs.push_back(std::move(hi));
    }
  }
  return exact_polytope_volume(hs, n);
}

}  // namespace

Rational exact_intersection_volume(const std::vector<CrossPolytope>& balls) {
  return intersection_volume_impl(balls, false);
}

Rational exact_boxed_intersection_volume(const std::vector<CrossPolytope>& balls) {
  return intersection_volume_impl(balls, true);
}

Rational exact_hull_volume(const std::vector<RatVec>& points) {
  if (points.empty()) throw InvalidInstance("hull oracle needs points");
  const int n = static_cast<int>(points[0].size());
  if (n < 1 || n > kMaxOracleDim)
    throw PreconditionViolation("exact hull oracle refuses dimensions above 4");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != n) throw InvalidInstance("point dimension mismatch");
  return hull_volume(points, n);
}

Rational stage_profile_interval(const Rational& u, const Rational& v, const Rational& c1) {
  const Rational lo = std::max(std::max(Rational(-u), c1 - v), Rational(-1));
  const Rational hi = std::min(std::min(u, c1 + v), Rational(1));
  return hi > lo ? hi - lo : Rational(0);
}

Rational stage_profile_area(const Rational& u, const Rational& v, const Rational& c1,
                            const Rational& c2) {
  // Integrate s -> stage_profile_interval(u-|s|, v-|s-c2|, c1) over [-1,1].
  // The integrand is piecewise linear; breakpoints are collected as all
  // pairwise crossings of the envelope arguments on each linearity region.
  std::vector<Rational> cuts{Rational(-1), Rational(1)};

  // Linear pieces of x(s) = u-|s| and y(s) = v-|s-c2| per region split by the
  // kinks {0, c2}; slopes are in {-1, +1}.
  auto add_pair_cuts = [&](const Rational& lo_b, const Rational& hi_b, int sx, int sy) {
    if (lo_b >= hi_b) return;
    // envelope arguments as alpha + beta*s
    struct Lin {
      Rational alpha, beta;
    };
    const Lin x{u, Rational(-sx)}, y{v + Rational(sy) * c2, Rational(-sy)};
    const Lin top[3] = {x, {c1 + y.alpha, y.beta}, {Rational(1), Rational(0)}};
    const Lin bot[3] = {{-x.alpha, -x.beta}, {c1 - y.alpha, -y.beta}, {Rational(-1), Rational(0)}};
    auto cross = [&](const Lin& p, const Lin& q) {
      if (p.beta == q.beta) return;
      Rational s = (q.alpha - p.alpha) / (p.beta - q.beta);
      if (s > lo_b && s < hi_b) cuts.push_back(std::move(s));
    };
    for (const auto& p : top)
      for (const auto& q : top) cross(p, q);
    for (const auto& p : bot)
      for (const auto& q : bot) cross(p, q);
    for (const auto& p : top)
      for (const auto& q : bot) cross(p, q);
  };
  // |s| slope: -1 below 0, +1 above; |s-c2| slope: -1 below c2, +1 above.
  std::vector<Rational> region_pts{Rational(-1), Rational(0), c2, Rational(1)};
  std::sort(region_pts.begin(), region_pts.end());
  for (size_t i = 0; i + 1 < region_pts.size(); ++i) {
    const Rational lo_b = std::max(region_pts[i], Rational(-1));
    const Rational hi_b = std::min(region_pts[i + 1], Rational(1));
    if (lo_b >= hi_b) continue;
    const Rational mid = (lo_b + hi_b) / 2;
    const int sx = mid < 0 ? -1 : 1;
    const int sy = mid < c2 ? -1 : 1;
    add_pair_cuts(lo_b, hi_b, sx, sy);
  }
  for (const auto& p : region_pts)
    if (p >= -1 && p <= 1) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto f = [&](const Rational& s) {
    return stage_profile_interval(u - rat_abs(s), v - rat_abs(s - c2), c1);
  };
  Rational total = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    total += (f(cuts[i]) + f(cuts[i + 1])) * (cuts[i + 1] - cuts[i]) / 2;
  return total;
}

Rational stage_profile_volume(const RatVec& c, const Rational& u, const Rational& v, int dims) {
  if (dims < 1 || static_cast<size_t>(dims) > c.size())
    throw PreconditionViolation("stage profile needs 1 <= dims <= len(c)");
  if (u <= 0 || v <= 0) return Rational(0);
  RatVec prefix(c.begin(), c.begin() + dims);
  std::vector<CrossPolytope> balls;
  balls.emplace_back(RatVec(static_cast<size_t>(dims), Rational(0)), u);
  balls.emplace_back(std::move(prefix), v);
  return exact_boxed_intersection_volume(balls);
}

Rational k_stage_profile_volume(const std::vector<RatVec>& centers, const RatVec& u, int dims) {
  if (centers.empty() || centers.size() != u.size())
    throw PreconditionViolation("k stage profile needs one bound per center");
  std::vector<CrossPolytope> balls;
  for (size_t i = 0; i < centers.size(); ++i) {
    if (u[i] <= 0) return Rational(0);
    RatVec prefix(centers[i].begin(), centers[i].begin() + dims);
    balls.emplace_back(std::move(prefix), u[i]);
  }
  return exact_boxed_intersection_volume(balls);
}

MCEstimate mc_volume(const std::vector<CrossPolytope>& balls, long long samples,
                     std::uint64_t seed) {
  if (balls.empty()) throw PreconditionViolation("need at least one ball");
  if (samples <= 0) throw PreconditionViolation("sample count must be positive");
  const int n = balls[0].dim();
  const CrossPolytope& first = balls[0];
  if (first.radius != 1 || l1_norm(first.center) != 0)
    throw PreconditionViolation("monte carlo sampler requires the first ball to be C(0,1)");

  std::vector<double> centers(static_cast<size_t>(balls.size()) * n);
  std::vector<double> radii(balls.size());
  for (size_t i = 0; i < balls.size(); ++i) {
    if (balls[i].dim() != n) throw InvalidInstance("ball dimension mismatch");
    radii[i] = to_double(balls[i].radius);
    for (int j = 0; j < n; ++j)
      centers[i * n + static_cast<size_t>(j)] = to_double(balls[i].center[static_cast<size_t>(j)]);
  }

  std::mt19937_64 rng(seed);
  auto next_coord = [&rng]() {
    // 53-bit mantissa in [0,1), mapped to [-1,1); bit-stable across platforms
    const double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
  };

  std::vector<double> x(static_cast<size_t>(n));
  long long hits = 0;
  for (long long s = 0; s < samples; ++s) {
    for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = next_coord();
    bool inside = true;
    for (size_t i = 0; i < balls.size() && inside; ++i) {
      double norm = 0.0;
      for (int j = 0; j < n; ++j)
        norm += std::abs(x[static_cast<size_t>(j)] - centers[i * n + static_cast<size_t>(j)]);
      inside = norm <= radii[i];
    }
    if (inside) ++hits;
  }

  MCEstimate out;
  out.samples = samples;
  out.seed = seed;
  const double box = std::ldexp(1.0, n);  // 2^n
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  out.estimate = box * p;
  out.half_width = box * 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return out;
}

LargeSetCount count_large_sets(const std::vector<long long>& a) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || n > 24) throw PreconditionViolation("sign enumeration supports 1 <= n <= 24");
  long long sum = 0;
  for (long long x : a) {
    if (x < 1) throw PreconditionViolation("weights must be positive integers");
    sum += x;
  }
  if (sum % 2 != 0) throw PreconditionViolation("weight sum must be even");

  LargeSetCount out;
  const long long top = 1LL << n;
  for (long long mask = 0; mask < top; ++mask) {
    long long dotv = 0;
    for (int j = 0; j < n; ++j) dotv += ((mask >> j) & 1) ? a[static_cast<size_t>(j)] : -a[static_cast<size_t>(j)];
    if (dotv > 0) ++out.large_sets;
  }
  out.partitions = top - 2 * out.large_sets;
  return out;
}

ReductionCheck hardness_reduction_check(const std::vector<long long>& a) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || n > 3)
    throw PreconditionViolation("reduction check needs n <= 3 for the exact oracle");
  const LargeSetCount counts = count_large_sets(a);

  Rational norm = 0;
  for (long long x : a) norm += x;
  ReductionCheck out;
  out.delta = Rational(9, 100) / (Rational(n) * Rational(1LL << n) * norm);
  out.epsilon = out.delta / 2;

  RatVec scaled(a.size());
  for (size_t i = 0; i < a.size(); ++i) scaled[i] = out.delta * a[i];
  const RatVec origin(a.size(), Rational(0));
  const CrossPolytope shifted(scaled, Rational(1));
  const CrossPolytope outer(origin, 1 + out.epsilon);
  const CrossPolytope inner(origin, Rational(1));

  const Rational with_outer = exact_intersection_volume({shifted, outer});
  const Rational with_both = exact_intersection_volume({shifted, outer, inner});
  const Rational shell = with_outer - with_both;
  const Rational scaled_count = Rational(factorial(n - 1)) * shell / out.epsilon;

  out.lhs = round_half_away(scaled_count).convert_to<long long>();
  out.rhs = counts.large_sets;
  out.pass = out.lhs == out.rhs;
  return out;
}

}  // namespace cpvol
