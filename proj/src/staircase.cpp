#include "cpvol/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <unordered_map>

#include "cpvol/errors.hpp"
#include "cpvol/kernels.hpp"

namespace cpvol {

namespace {

constexpr long kTileWidth = 16;  // kernel rows grouped by shift for cache reuse

void append_progression(std::vector<Rational>& out, const Rational& center, const Rational& step,
                        long m) {
  for (long i = -m; i <= m; ++i) {
    Rational t = center + Rational(i) * step;
    if (t >= -1 && t <= 1) out.push_back(std::move(t));
  }
}

void sort_unique(std::vector<Rational>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

void parallel_rows(long begin, long end, int threads, const std::function<void(long, long)>& fn) {
  threads = std::max(1, threads);
  const long count = end - begin;
  if (threads == 1 || count < 2 * threads) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long b = begin + t * chunk;
    const long e = std::min(end, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& th : pool) th.join();
}

inline double segment_overlap(double lo, double hi) { return hi > lo ? hi - lo : 0.0; }

}  // namespace

TwoBallInstance::TwoBallInstance(RatVec c_in, Rational r_in) : c(std::move(c_in)), r(std::move(r_in)) {
  if (c.empty()) throw InvalidInstance("two-ball instance needs dimension >= 1");
  if (r <= 0 || r > 1) throw PreconditionViolation("two-ball radius must satisfy 0 < r <= 1");
  Rational norm = 0;
  for (const auto& ci : c) {
    if (ci < 0) throw PreconditionViolation("two-ball center must be componentwise nonnegative");
    norm += ci;
  }
  if (norm > r)
    throw PreconditionViolation("two-ball instance requires ||c||_1 <= r (mutually contained centers)");
}

StaircaseTable::StaircaseTable(long resolution, Rational second_radius)
    : m_(resolution), r_(std::move(second_radius)),
      values_(static_cast<size_t>(resolution + 1) * (resolution + 1), 0.0) {
  if (resolution < 1) throw PreconditionViolation("grid resolution must be >= 1");
  if (r_ <= 0 || r_ > 1) throw PreconditionViolation("table radius must satisfy 0 < r <= 1");
}

StaircaseTable StaircaseTable::initial(long resolution, Rational second_radius) {
  StaircaseTable t(resolution, std::move(second_radius));
  std::fill(t.values_.begin(), t.values_.end(), 1.0);
  return t;
}

bool StaircaseTable::is_monotone() const {
  for (long k = 0; k <= m_; ++k)
    for (long l = 0; l <= m_; ++l) {
      if (k > 0 && at(k, l) < at(k - 1, l)) return false;
      if (l > 0 && at(k, l) < at(k, l - 1)) return false;
    }
  return true;
}

std::vector<Rational> breakpoints(const Rational& u, const Rational& v, const Rational& c_i,
                                  long resolution, const Rational& r) {
  if (resolution < 1) throw PreconditionViolation("grid resolution must be >= 1");
  if (c_i < 0 || c_i > 1) throw PreconditionViolation("coordinate offset must lie in [0,1]");
  const Rational m(resolution);
  if (u < 0 || u > 1 || v < 0 || v > r || denominator(u * m) != 1 ||
      denominator(v * m / r) != 1)
    throw PreconditionViolation("breakpoints arguments must be grid points");

  std::vector<Rational> pts;
  pts.reserve(4 * resolution + 8);
  // s = +-(u - k/M): levels of u-|s|
  for (long k = 0; k <= resolution; ++k) {
    Rational off = u - Rational(k) / m;
    if (off < 0) break;
    for (const Rational& s : {Rational(off), Rational(-off)})
      if (s >= -1 && s <= 1) pts.push_back(s);
  }
  // s = c_i +- (v - l r/M): levels of v-|s-c_i|
  for (long l = 0; l <= resolution; ++l) {
    Rational off = v - Rational(l) * r / m;
    if (off < 0) break;
    for (const Rational& s : {Rational(c_i + off), Rational(c_i - off)})
      if (s >= -1 && s <= 1) pts.push_back(s);
  }
  for (const Rational& s : {Rational(-1), Rational(0), Rational(c_i), Rational(1)})
    pts.push_back(s);
  sort_unique(pts);
  return pts;
}

std::vector<KernelTerm> build_stage_kernel(long resolution, const Rational& c_i,
                                           const Rational& r) {
  const Rational m(resolution);
  std::vector<Rational> pts;
  pts.reserve(4 * resolution + 8);
  append_progression(pts, Rational(0), Rational(1) / m, resolution);
  append_progression(pts, c_i, r / m, resolution);
  for (const Rational& s : {Rational(-1), Rational(0), Rational(c_i), Rational(1)})
    if (s >= -1 && s <= 1) pts.push_back(s);
  sort_unique(pts);

  std::vector<KernelTerm> terms;
  terms.reserve(pts.size());
  const Rational m_over_r = m / r;
  for (size_t j = 0; j + 1 < pts.size(); ++j) {
    const Rational mid = (pts[j] + pts[j + 1]) / 2;
    // Cell shift of the midpoint relative to any grid point: the argument
    // u - |mid| lives |M*mid| cells below u (exactly on a level only when
    // the argument is negative, which the index rule already maps to zero).
    const long a = rat_floor(m * rat_abs(mid)).convert_to<long>();
    const long b = rat_floor(m_over_r * rat_abs(mid - c_i)).convert_to<long>();
    if (a >= resolution || b >= resolution) continue;  // below every positive cell
    terms.push_back({static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
                     to_double(pts[j + 1] - pts[j])});
  }
  std::stable_sort(terms.begin(), terms.end(), [](const KernelTerm& x, const KernelTerm& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  std::vector<KernelTerm> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().a == t.a && merged.back().b == t.b)
      merged.back().w += t.w;
    else
      merged.push_back(t);
  }
  return merged;
}

namespace {

// Accumulates every kernel term into the output rows [k_begin, k_end).
// Terms are visited in ascending (a,b) order for every entry regardless of
// tiling or threading, so results are bit-reproducible.
void sweep_rows(const StaircaseTable& in, StaircaseTable& out,
                const std::vector<KernelTerm>& terms, long k_begin, long k_end) {
  const long m = in.resolution();
  const auto axpy = kern::axpy();
  size_t tile_start = 0;
  while (tile_start < terms.size()) {
    const long tile_a = terms[tile_start].a / kTileWidth;
    size_t tile_end = tile_start;
    while (tile_end < terms.size() && terms[tile_end].a / kTileWidth == tile_a) ++tile_end;
    for (long k = k_begin; k < k_end; ++k) {
      for (size_t j = tile_start; j < tile_end; ++j) {
        const KernelTerm& t = terms[j];
        if (t.a >= k) break;  // terms sorted by a; k - a <= 0 reads nothing
        axpy(out.row(k) + t.b + 1, in.row(k - t.a) + 1, t.w, static_cast<size_t>(m - t.b));
      }
    }
    tile_start = tile_end;
  }
}

}  // namespace

StaircaseTable dp_stage(const StaircaseTable& prev, const Rational& c_i, int threads) {
  if (c_i < 0 || c_i > 1) throw PreconditionViolation("coordinate offset must lie in [0,1]");
  const long m = prev.resolution();
  const auto terms = build_stage_kernel(m, c_i, prev.second_radius());
  StaircaseTable out(m, prev.second_radius());
  parallel_rows(1, m + 1, threads, [&](long b, long e) { sweep_rows(prev, out, terms, b, e); });
  return out;
}

double stage_one_value(long k, long l, long resolution, double r, double c1) {
  if (k <= 0 || l <= 0) return 0.0;
  const double u = static_cast<double>(k) / static_cast<double>(resolution);
  const double v = r * static_cast<double>(l) / static_cast<double>(resolution);
  const double lo = std::max(std::max(-u, c1 - v), -1.0);
  const double hi = std::min(std::min(u, c1 + v), 1.0);
  return segment_overlap(lo, hi);
}

namespace {

// Grid coordinates tabulated once; values match stage_one_value bit for bit.
struct StageOneGrid {
  std::vector<double> u, v;
  double c1;

  StageOneGrid(long m, double rd, double c1d) : u(m + 1), v(m + 1), c1(c1d) {
    for (long k = 0; k <= m; ++k) {
      u[static_cast<size_t>(k)] = static_cast<double>(k) / static_cast<double>(m);
      v[static_cast<size_t>(k)] = rd * static_cast<double>(k) / static_cast<double>(m);
    }
  }

  double value(long k, long l) const {
    if (k <= 0 || l <= 0) return 0.0;
    const double uu = u[static_cast<size_t>(k)], vv = v[static_cast<size_t>(l)];
    const double lo = std::max(std::max(-uu, c1 - vv), -1.0);
    const double hi = std::min(std::min(uu, c1 + vv), 1.0);
    return segment_overlap(lo, hi);
  }
};

// Lazy evaluation of stage values: only entries reachable from the requested
// grid point are computed, in the same term order as the dense sweep.
class LazyTwoBall {
 public:
  LazyTwoBall(const TwoBallInstance& inst, long m)
      : m_(m), grid_(m, to_double(inst.r), to_double(inst.c[0])) {
    const int n = inst.dim();
    kernels_.resize(n + 1);
    memo_.resize(n + 1);
    for (int i = 2; i <= n; ++i) kernels_[i] = build_stage_kernel(m, inst.c[i - 1], inst.r);
  }

  double value(int stage, long k, long l) {
    if (k <= 0 || l <= 0) return 0.0;
    if (stage == 1) return grid_.value(k, l);
    auto& memo = memo_[stage];
    const std::uint64_t key = static_cast<std::uint64_t>(k) * (m_ + 1) + l;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const double acc = compute(stage, k, l);
    memo.emplace(key, acc);
    return acc;
  }

  // Root entry; the children of the final stage are pairwise distinct, so
  // for n <= 3 they can be computed in parallel without touching the memo.
  double value_root(int n, long k, long l, int threads) {
    if (n <= 1 || threads <= 1 || n > 3) return value(n, k, l);
    const auto& terms = kernels_[n];
    std::vector<double> child(terms.size(), 0.0);
    parallel_rows(0, static_cast<long>(terms.size()), threads, [&](long b, long e) {
      for (long j = b; j < e; ++j) {
        const KernelTerm& t = terms[static_cast<size_t>(j)];
        const long kk = k - t.a, ll = l - t.b;
        if (kk >= 1 && ll >= 1)
          child[static_cast<size_t>(j)] =
              n == 2 ? grid_.value(kk, ll) : compute(n - 1, kk, ll);
      }
    });
    double acc = 0.0;
    for (size_t j = 0; j < terms.size(); ++j) {
      const KernelTerm& t = terms[j];
      if (k - t.a >= 1 && l - t.b >= 1) acc += t.w * child[j];
    }
    return acc;
  }

 private:
  double compute(int stage, long k, long l) {
    double acc = 0.0;
    for (const KernelTerm& t : kernels_[stage]) {
      const long kk = k - t.a, ll = l - t.b;
      if (kk >= 1 && ll >= 1)
        acc += t.w * (stage == 2 ? grid_.value(kk, ll) : value(stage - 1, kk, ll));
    }
    return acc;
  }

  long m_;
  StageOneGrid grid_;
  std::vector<std::vector<KernelTerm>> kernels_;
  std::vector<std::unordered_map<std::uint64_t, double>> memo_;
};

StaircaseTable stage_one_table(const TwoBallInstance& inst, long m) {
  StaircaseTable t(m, inst.r);
  const StageOneGrid grid(m, to_double(inst.r), to_double(inst.c[0]));
  for (long k = 1; k <= m; ++k) {
    double* row = t.row(k);
    for (long l = 1; l <= m; ++l) row[l] = grid.value(k, l);
  }
  return t;
}

}  // namespace

long two_ball_resolution(int n, const Rational& delta) {
  return rat_ceil(Rational(4) * n * n / delta).convert_to<long>();
}

TwoBallTrace run_two_ball(const TwoBallInstance& inst, long resolution, const TwoBallOptions& opts) {
  if (resolution < 1) throw PreconditionViolation("grid resolution must be >= 1");
  const int n = inst.dim();
  const bool dense = opts.full_tables || opts.keep_tables;
  TwoBallTrace trace;
  trace.resolution = resolution;

  if (!dense && n == 1) {
    trace.value = stage_one_value(resolution, resolution, resolution, to_double(inst.r),
                                  to_double(inst.c[0]));
    return trace;
  }
  if (!dense && n > 1) {
    LazyTwoBall lazy(inst, resolution);
    trace.value = lazy.value_root(n, resolution, resolution, opts.threads);
    return trace;
  }

  StaircaseTable cur = stage_one_table(inst, resolution);
  if (opts.keep_tables) trace.stages.push_back(cur);
  for (int i = 2; i <= n; ++i) {
    cur = dp_stage(cur, inst.c[i - 1], opts.threads);
    if (opts.keep_tables) trace.stages.push_back(cur);
  }
  trace.value = cur.at(resolution, resolution);
  return trace;
}

ApproxResult approx_two_ball_volume(const TwoBallInstance& inst, const Rational& delta,
                                    const TwoBallOptions& opts) {
  if (delta <= 0 || delta >= 1)
    throw PreconditionViolation("two-ball tolerance must satisfy 0 < delta < 1");
  const long m = two_ball_resolution(inst.dim(), delta);
  TwoBallTrace trace = run_two_ball(inst, m, opts);
  ApproxResult out;
  out.value = trace.value;
  out.delta = delta;
  out.M_used = m;
  out.lower_bound_exact = true;
  return out;
}

}  // namespace cpvol
