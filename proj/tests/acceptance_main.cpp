// Acceptance suite: every check below is an exit gate for the toolkit.
// Run with no arguments for the full suite, or pass criterion indices.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cpvol/errors.hpp"
#include "cpvol/geometry.hpp"
#include "cpvol/kball.hpp"
#include "cpvol/knapsack_dual.hpp"
#include "cpvol/oracles.hpp"
#include "cpvol/staircase.hpp"
#include "cpvol/vpolytope.hpp"

using namespace cpvol;

namespace {

constexpr double kSlack = 1e-9;

int g_checks = 0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

TwoBallInstance random_two_ball(int n, std::mt19937_64& rng, bool strict) {
  const Rational r(static_cast<long>(rng() % 14) + 3, 16);
  RatVec c(static_cast<size_t>(n));
  const long per_axis = strict ? 15 : 16;
  for (auto& x : c)
    x = Rational(static_cast<long>(rng() % (per_axis + 1))) * r / Rational(16L * n);
  return TwoBallInstance(c, r);
}

double oracle_two_ball(const TwoBallInstance& inst) {
  return to_double(exact_intersection_volume(
      {CrossPolytope(RatVec(static_cast<size_t>(inst.dim()), Rational(0)), 1),
       CrossPolytope(inst.c, inst.r)}));
}

// 1. Two-ball guarantee: oracle <= Z <= (1+delta) * oracle on random
//    instances for n in {1,2,3}, delta in {1/2, 1/5, 1/10}.
Outcome criterion_guarantee() {
  std::mt19937_64 rng(20240101);
  Outcome out;
  int runs = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const Rational& delta : {Rational(1, 2), Rational(1, 5), Rational(1, 10)}) {
      for (int trial = 0; trial < 50; ++trial) {
        const auto inst = random_two_ball(n, rng, false);
        const auto res = approx_two_ball_volume(inst, delta, {.threads = 2});
        const double oracle = oracle_two_ball(inst);
        ++runs;
        ++g_checks;
        if (!(oracle <= res.value * (1 + kSlack)) ||
            !(res.value <= to_double(1 + delta) * oracle * (1 + kSlack))) {
          out.pass = false;
          out.detail = "violation at n=" + std::to_string(n) + " delta=" + to_string(delta) +
                       " Z=" + std::to_string(res.value) + " oracle=" + std::to_string(oracle);
          return out;
        }
      }
    }
  }
  out.detail = std::to_string(runs) + " runs";
  return out;
}

// 2. Per-stage sandwich on n=2 grids (M in {4,8}) against exact profiles.
Outcome criterion_sandwich() {
  std::mt19937_64 rng(20240202);
  Outcome out;
  long points = 0;
  for (long m : {4L, 8L}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto inst = random_two_ball(2, rng, false);
      TwoBallOptions opts;
      opts.keep_tables = true;
      const auto trace = run_two_ball(inst, m, opts);
      for (int stage = 1; stage <= 2; ++stage) {
        const auto& table = trace.stages[static_cast<size_t>(stage - 1)];
        for (long k = 0; k <= m; ++k) {
          for (long l = 0; l <= m; ++l) {
            const Rational u(k, m);
            const Rational v = Rational(l) * inst.r / m;
            const Rational su = u + Rational(stage, m);
            const Rational sv = v + inst.r * stage / m;
            const double lower = to_double(
                stage == 1 ? stage_profile_interval(u, v, inst.c[0])
                           : stage_profile_area(u, v, inst.c[0], inst.c[1]));
            const double upper = to_double(
                stage == 1 ? stage_profile_interval(su, sv, inst.c[0])
                           : stage_profile_area(su, sv, inst.c[0], inst.c[1]));
            const double got = table.at(k, l);
            ++points;
            g_checks += 2;
            if (lower > got + kSlack || got > upper + kSlack) {
              out.pass = false;
              out.detail = "violation at M=" + std::to_string(m) + " stage=" +
                           std::to_string(stage) + " k=" + std::to_string(k) + " l=" +
                           std::to_string(l);
              return out;
            }
          }
        }
      }
    }
  }
  out.detail = std::to_string(points) + " grid points";
  return out;
}

// 3. Knapsack-dual guarantee over every weight vector with entries <= 4,
//    n <= 3, eps in {1/2, 1/4}; configurations over the grid cap are skipped
//    and reported.
Outcome criterion_knapsack() {
  Outcome out;
  const long grid_cap = 20000;
  int done = 0, skipped = 0;
  std::vector<std::vector<long long>> weights;
  for (long long a1 = 1; a1 <= 4; ++a1) {
    weights.push_back({a1});
    for (long long a2 = 1; a2 <= a1; ++a2) {
      weights.push_back({a1, a2});
      for (long long a3 = 1; a3 <= a2; ++a3) weights.push_back({a1, a2, a3});
    }
  }
  for (const auto& a : weights) {
    std::vector<RatVec> pts;
    const size_t n = a.size();
    for (size_t i = 0; i < n; ++i) {
      RatVec e(n, Rational(0));
      e[i] = 1;
      pts.push_back(e);
      e[i] = -1;
      pts.push_back(e);
    }
    RatVec top(n);
    for (size_t i = 0; i < n; ++i) top[i] = a[i];
    pts.push_back(top);
    const double exact = to_double(exact_hull_volume(pts));

    for (const Rational& eps : {Rational(1, 2), Rational(1, 4)}) {
      const KnapsackDualInstance inst(a);
      const auto params = build_params(inst, eps);
      if (two_ball_resolution(inst.dim(), params.inner_delta) > grid_cap) {
        ++skipped;
        continue;
      }
      const auto res = approx_knapsack_dual_volume(inst, eps, {.threads = 2});
      const double e = to_double(eps);
      ++done;
      ++g_checks;
      if (!(res.value >= (1 - e) * exact - kSlack) ||
          !(res.value <= (1 + e) * exact + kSlack)) {
        out.pass = false;
        out.detail = "violation at a=(";
        for (auto x : a) out.detail += std::to_string(x) + ",";
        out.detail += ") eps=" + to_string(eps) + " got " + std::to_string(res.value) +
                      " exact " + std::to_string(exact);
        return out;
      }
    }
  }
  out.detail = std::to_string(done) + " configurations, " + std::to_string(skipped) +
               " skipped by the M<=" + std::to_string(grid_cap) + " cap";
  return out;
}

// 4. k-ball consistency: the k=2 engine against the two-ball engine on 20
//    shared instances, and k=3 against the exact oracle.
Outcome criterion_kball() {
  std::mt19937_64 rng(20240404);
  Outcome out;
  const Rational delta(1, 4);
  const double bound = to_double((1 + delta) * (1 + delta));
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + (trial % 2);
    const auto two = random_two_ball(n, rng, true);
    const auto z_two = approx_two_ball_volume(two, delta).value;
    const KBallInstance kb({RatVec(static_cast<size_t>(n), Rational(0)), two.c},
                           {Rational(1), two.r});
    const auto z_k = approx_k_ball_volume(kb, delta).value;
    const double ratio = z_k / z_two;
    ++g_checks;
    if (!(ratio <= bound * (1 + kSlack)) || !(ratio >= 1.0 / bound * (1 - kSlack))) {
      out.pass = false;
      out.detail = "k=2 ratio " + std::to_string(ratio) + " at trial " + std::to_string(trial);
      return out;
    }
  }

  const std::vector<std::pair<Rational, Rational>> shifts{{Rational(1, 10), Rational(0)},
                                                          {Rational(0), Rational(1, 10)}};
  for (const Rational& d3 : {Rational(1, 4), Rational(1, 5)}) {
    const KBallInstance inst(
        {{Rational(0), Rational(0)}, {shifts[0].first, shifts[0].second},
         {shifts[1].first, shifts[1].second}},
        {Rational(1), Rational(1), Rational(1)});
    const auto res = approx_k_ball_volume(inst, d3);
    std::vector<CrossPolytope> balls;
    for (size_t i = 0; i < inst.centers.size(); ++i)
      balls.emplace_back(inst.centers[i], inst.radii[i]);
    const double oracle = to_double(exact_intersection_volume(balls));
    ++g_checks;
    if (!(oracle <= res.value * (1 + kSlack)) ||
        !(res.value <= to_double(1 + d3) * oracle * (1 + kSlack))) {
      out.pass = false;
      out.detail = "k=3 bracket failed at delta=" + to_string(d3);
      return out;
    }
  }
  out.detail = "20 shared k=2 instances, 2 three-ball brackets";
  return out;
}

// 5. Exact V-polytope volumes: formula match on cross-polytopes and exact
//    agreement with the hull oracle on random general-position instances.
Outcome criterion_vpolytope() {
  std::mt19937_64 rng(20240505);
  Outcome out;
  for (int n = 2; n <= 4; ++n) {
    for (const Rational& r : {Rational(1), Rational(2, 3), Rational(3, 2)}) {
      std::vector<RatVec> verts;
      for (int i = 0; i < n; ++i) {
        RatVec e(static_cast<size_t>(n), Rational(0));
        e[static_cast<size_t>(i)] = r;
        verts.push_back(e);
        e[static_cast<size_t>(i)] = -r;
        verts.push_back(e);
      }
      ++g_checks;
      if (exact_volume(VPolytopeInstance(verts)) != cross_polytope_volume(n, r)) {
        out.pass = false;
        out.detail = "formula mismatch at n=" + std::to_string(n);
        return out;
      }
    }
  }
  int done = 0;
  while (done < 30) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<RatVec> verts;
    for (int i = 0; i < n + k; ++i) {
      RatVec v(static_cast<size_t>(n));
      for (auto& x : v) x = Rational(static_cast<long>(rng() % 129) - 64, 32);
      verts.push_back(std::move(v));
    }
    try {
      const Rational direct = exact_volume(VPolytopeInstance(verts));
      ++g_checks;
      if (direct != exact_hull_volume(verts)) {
        out.pass = false;
        out.detail = "oracle mismatch on a random instance";
        return out;
      }
      ++done;
    } catch (const DegenerateInput&) {
    } catch (const OriginNotInterior&) {
    }
  }
  out.detail = "9 formula checks, 30 random instances";
  return out;
}

// 6. Reduction identity: exhaustive over even-sum vectors with entries <= 3.
Outcome criterion_reduction() {
  Outcome out;
  int done = 0;
  for (int n = 2; n <= 3; ++n) {
    std::vector<long long> a(static_cast<size_t>(n), 1);
    while (true) {
      long long sum = 0;
      for (long long x : a) sum += x;
      if (sum % 2 == 0) {
        const auto check = hardness_reduction_check(a);
        ++done;
        ++g_checks;
        if (!check.pass) {
          out.pass = false;
          out.detail = "identity failed at a=(";
          for (auto x : a) out.detail += std::to_string(x) + ",";
          out.detail += ") lhs=" + std::to_string(check.lhs) + " rhs=" + std::to_string(check.rhs);
          return out;
        }
      }
      size_t pos = 0;
      while (pos < a.size() && a[pos] == 3) a[pos++] = 1;
      if (pos == a.size()) break;
      ++a[pos];
    }
  }
  out.detail = std::to_string(done) + " weight vectors";
  return out;
}

// 7. Complexity scaling of the dense per-stage sweep: doubling M at n=2
//    multiplies the wall time by ~8.
Outcome criterion_scaling() {
  Outcome out;
  const TwoBallInstance inst({Rational(1, 8), Rational(1, 16)}, Rational(1, 2));
  TwoBallOptions opts;
  opts.full_tables = true;
  opts.threads = 1;
  auto timed = [&](long m) {
    std::vector<double> times;
    for (int rep = 0; rep < 3; ++rep) {
      const auto begin = std::chrono::steady_clock::now();
      volatile double sink = run_two_ball(inst, m, opts).value;
      (void)sink;
      const auto end = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(end - begin).count());
    }
    std::sort(times.begin(), times.end());
    return times[1];
  };
  const long base = 640;
  timed(base / 4);  // warm up
  const double t1 = timed(base);
  const double t2 = timed(2 * base);
  const double ratio = t2 / t1;
  ++g_checks;
  out.pass = ratio >= 8.0 * 0.6 && ratio <= 8.0 * 1.4;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "t(%ld)=%.3fs t(%ld)=%.3fs ratio=%.2f (want 8.0 +-40%%)", base,
                t1, 2 * base, t2, ratio);
  out.detail = buf;
  return out;
}

// 8. Monte Carlo coverage: the exact volume lies inside the 95% interval in
//    at least 17 of 20 seeded runs (one retry on a fresh seed block).
Outcome criterion_monte_carlo() {
  Outcome out;
  const CrossPolytope first(RatVec(2, Rational(0)), 1);
  const CrossPolytope second({Rational(1, 5), Rational(1, 5)}, Rational(1, 2));
  const double exact = to_double(exact_intersection_volume({first, second}));
  auto coverage = [&](std::uint64_t seed0) {
    int covered = 0;
    for (std::uint64_t s = seed0; s < seed0 + 20; ++s) {
      const auto est = mc_volume({first, second}, 1000000, s);
      if (std::abs(est.estimate - exact) <= est.half_width) ++covered;
    }
    return covered;
  };
  int covered = coverage(1);
  bool retried = false;
  if (covered < 17) {  // documented flakiness policy: one retry
    retried = true;
    covered = coverage(101);
  }
  ++g_checks;
  out.pass = covered >= 17;
  out.detail = std::to_string(covered) + "/20 runs covered" + (retried ? " (after retry)" : "");
  return out;
}

struct Criterion {
  const char* name;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {"two-ball guarantee vs exact oracle", criterion_guarantee},
    {"per-stage sandwich bounds", criterion_sandwich},
    {"knapsack-dual guarantee vs hull oracle", criterion_knapsack},
    {"k-ball consistency", criterion_kball},
    {"exact v-polytope volume", criterion_vpolytope},
    {"reduction identity", criterion_reduction},
    {"cubic per-stage scaling", criterion_scaling},
    {"monte carlo coverage", criterion_monte_carlo},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= 8; ++i) selected.push_back(i);

  int failures = 0;
  for (int idx : selected) {
    if (idx < 1 || idx > 8) {
      std::fprintf(stderr, "unknown criterion %d\n", idx);
      return 64;
    }
    const auto& crit = kCriteria[idx - 1];
    const auto begin = std::chrono::steady_clock::now();
    const Outcome result = crit.fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    std::printf("criterion %d [%s] %s: %s (%.1fs)\n", idx, result.pass ? "PASS" : "FAIL",
                crit.name, result.detail.c_str(), secs);
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  if (g_checks > 0) std::printf("%d checks evaluated\n", g_checks);
  return failures;
}
