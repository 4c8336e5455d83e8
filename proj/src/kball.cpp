#include "cpvol/kball.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <unordered_map>

#include "cpvol/errors.hpp"
#include "cpvol/kernels.hpp"

namespace cpvol {

namespace {

constexpr std::size_t kDenseEntryLimit = 300'000'000;  // ~2.4 GB of doubles

void sort_unique(std::vector<Rational>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

void parallel_range(std::size_t begin, std::size_t end, int threads,
                    const std::function<void(std::size_t, std::size_t)>& fn) {
  threads = std::max(1, threads);
  const std::size_t count = end - begin;
  if (threads == 1 || count < 2 * static_cast<std::size_t>(threads)) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t b = begin + t * chunk;
    const std::size_t e = std::min(end, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& th : pool) th.join();
}

}  // namespace

KBallInstance::KBallInstance(std::vector<RatVec> centers_in, std::vector<Rational> radii_in)
    : centers(std::move(centers_in)), radii(std::move(radii_in)) {
  if (centers.empty()) throw InvalidInstance("k-ball instance needs at least one ball");
  if (centers.size() > kMaxBalls)
    throw PreconditionViolation("k-ball engine supports at most " + std::to_string(kMaxBalls) +
                                " balls");
  if (radii.size() != centers.size())
    throw InvalidInstance("k-ball instance needs one radius per center");
  const size_t n = centers[0].size();
  if (n == 0) throw InvalidInstance("k-ball instance needs dimension >= 1");
  for (const auto& p : centers)
    if (p.size() != n) throw InvalidInstance("k-ball centers must share one dimension");
  for (const auto& r : radii)
    if (r <= 0 || r > 1) throw PreconditionViolation("k-ball radii must satisfy 0 < r <= 1");

  // Canonical anchoring: translate so the first center is the origin.
  const RatVec shift = centers[0];
  for (auto& p : centers)
    for (size_t j = 0; j < n; ++j) p[j] -= shift[j];

  for (size_t i = 0; i < centers.size(); ++i)
    for (size_t j = 0; j < centers.size(); ++j)
      if (l1_norm(sub(centers[i], centers[j])) >= radii[j])
        throw PreconditionViolation(
            "k-ball centers must be strictly interior to every ball "
            "(||p_i - p_j||_1 < r_j)");
}

KStaircaseTable::KStaircaseTable(long resolution, std::vector<Rational> radii)
    : m_(resolution), radii_(std::move(radii)) {
  if (resolution < 1) throw PreconditionViolation("grid resolution must be >= 1");
  if (radii_.empty() || radii_.size() > kMaxBalls)
    throw PreconditionViolation("table needs 1..4 radii");
  std::size_t total = 1;
  for (size_t i = 0; i < radii_.size(); ++i) {
    total *= static_cast<std::size_t>(resolution + 1);
    if (total > kDenseEntryLimit)
      throw PreconditionViolation("dense k-ball table exceeds the memory budget");
  }
  values_.assign(total, 0.0);
}

KStaircaseTable KStaircaseTable::initial(long resolution, std::vector<Rational> radii) {
  KStaircaseTable t(resolution, std::move(radii));
  std::fill(t.values_.begin(), t.values_.end(), 1.0);
  return t;
}

bool KStaircaseTable::is_monotone() const {
  const int k = balls();
  const long m = m_;
  std::array<long, kMaxBalls> idx{};
  const std::size_t total = values_.size();
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rem = f;
    for (int i = k - 1; i >= 0; --i) {
      idx[i] = static_cast<long>(rem % (m + 1));
      rem /= (m + 1);
    }
    for (int axis = 0; axis < k; ++axis) {
      if (idx[axis] == 0) continue;
      idx[axis] -= 1;
      const double below = values_[flatten(idx.data())];
      idx[axis] += 1;
      if (values_[f] < below) return false;
    }
  }
  return true;
}

std::vector<Rational> k_breakpoints(const RatVec& u, int coord, const KBallInstance& inst,
                                    long resolution) {
  const int k = inst.balls();
  if (static_cast<int>(u.size()) != k) throw InvalidInstance("grid point arity mismatch");
  if (coord < 0 || coord >= inst.dim()) throw InvalidInstance("coordinate out of range");
  const Rational m(resolution);
  std::vector<Rational> pts;
  for (int i = 0; i < k; ++i) {
    if (u[i] < 0 || u[i] > inst.radii[i] || denominator(u[i] * m / inst.radii[i]) != 1)
      throw PreconditionViolation("k_breakpoints arguments must be grid points");
    const Rational& p = inst.centers[i][coord];
    for (long l = 0; l <= resolution; ++l) {
      Rational off = u[i] - Rational(l) * inst.radii[i] / m;
      if (off < 0) break;
      for (const Rational& s : {Rational(p + off), Rational(p - off)})
        if (s >= -1 && s <= 1) pts.push_back(s);
    }
    if (p >= -1 && p <= 1) pts.push_back(p);
  }
  pts.push_back(Rational(-1));
  pts.push_back(Rational(1));
  sort_unique(pts);
  return pts;
}

std::vector<KKernelTerm> build_k_stage_kernel(const KBallInstance& inst, long resolution,
                                              int coord) {
  const int k = inst.balls();
  const Rational m(resolution);
  std::vector<Rational> pts;
  for (int i = 0; i < k; ++i) {
    const Rational& p = inst.centers[i][coord];
    const Rational step = inst.radii[i] / m;
    for (long l = -resolution; l <= resolution; ++l) {
      Rational t = p + Rational(l) * step;
      if (t >= -1 && t <= 1) pts.push_back(std::move(t));
    }
    if (p >= -1 && p <= 1) pts.push_back(p);
  }
  pts.push_back(Rational(-1));
  pts.push_back(Rational(1));
  sort_unique(pts);

  std::vector<KKernelTerm> terms;
  terms.reserve(pts.size());
  for (size_t j = 0; j + 1 < pts.size(); ++j) {
    const Rational mid = (pts[j] + pts[j + 1]) / 2;
    KKernelTerm t{};
    bool keep = true;
    for (int i = 0; i < k; ++i) {
      const long a =
          rat_floor(m * rat_abs(mid - inst.centers[i][coord]) / inst.radii[i]).convert_to<long>();
      if (a >= resolution) {
        keep = false;
        break;
      }
      t.a[static_cast<size_t>(i)] = static_cast<std::int32_t>(a);
    }
    if (!keep) continue;
    t.w = to_double(pts[j + 1] - pts[j]);
    terms.push_back(t);
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const KKernelTerm& x, const KKernelTerm& y) { return x.a < y.a; });
  std::vector<KKernelTerm> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().a == t.a)
      merged.back().w += t.w;
    else
      merged.push_back(t);
  }
  return merged;
}

namespace {

// Stage-one closed form: length of the interval where every |s - p_i| <= u_i
// inside [-1,1], evaluated in doubles on the grid.
double k_stage_one_value(const long* idx, const KBallInstance& inst, long m,
                         const std::vector<double>& centers_d, const std::vector<double>& radii_d,
                         int coord) {
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < inst.balls(); ++i) {
    if (idx[i] <= 0) return 0.0;
    const double u = radii_d[i] * static_cast<double>(idx[i]) / static_cast<double>(m);
    lo = std::max(lo, centers_d[i * inst.dim() + coord] - u);
    hi = std::min(hi, centers_d[i * inst.dim() + coord] + u);
  }
  return hi > lo ? hi - lo : 0.0;
}

struct FlatCenters {
  std::vector<double> centers;  // balls x dim, row-major
  std::vector<double> radii;
};

FlatCenters flatten_instance(const KBallInstance& inst) {
  FlatCenters f;
  f.centers.reserve(static_cast<size_t>(inst.balls()) * inst.dim());
  for (const auto& p : inst.centers)
    for (const auto& x : p) f.centers.push_back(to_double(x));
  for (const auto& r : inst.radii) f.radii.push_back(to_double(r));
  return f;
}

void k_sweep(const KStaircaseTable& in, KStaircaseTable& out,
             const std::vector<KKernelTerm>& terms, int threads) {
  const int k = in.balls();
  const long m = in.resolution();
  const auto axpy = kern::axpy();
  if (k == 1) {
    for (const auto& t : terms) {
      if (t.a[0] >= m) continue;
      axpy(out.data() + t.a[0] + 1, in.data() + 1, t.w, static_cast<size_t>(m - t.a[0]));
    }
    return;
  }
  // Iterate output prefixes (all leading indices >= 1); last axis via axpy.
  std::size_t prefixes = 1;
  for (int i = 0; i + 1 < k; ++i) prefixes *= static_cast<std::size_t>(m + 1);
  parallel_range(0, prefixes, threads, [&](std::size_t pb, std::size_t pe) {
    std::array<long, kMaxBalls> idx{};
    std::array<long, kMaxBalls> src{};
    for (std::size_t p = pb; p < pe; ++p) {
      std::size_t rem = p;
      bool live = true;
      for (int i = k - 2; i >= 0; --i) {
        idx[i] = static_cast<long>(rem % (m + 1));
        rem /= (m + 1);
        if (idx[i] == 0) live = false;
      }
      if (!live) continue;
      idx[k - 1] = 0;
      double* dst = out.data() + out.flatten(idx.data());
      for (const auto& t : terms) {
        bool ok = true;
        for (int i = 0; i + 1 < k; ++i) {
          src[i] = idx[i] - t.a[i];
          if (src[i] < 1) {
            ok = false;
            break;
          }
        }
        const long last = t.a[k - 1];
        if (!ok || last >= m) continue;
        src[k - 1] = 0;
        const double* s = in.data() + in.flatten(src.data());
        axpy(dst + last + 1, s + 1, t.w, static_cast<size_t>(m - last));
      }
    }
  });
}

class LazyKBall {
 public:
  LazyKBall(const KBallInstance& inst, long m) : inst_(inst), m_(m), flat_(flatten_instance(inst)) {
    kernels_.resize(inst.dim() + 1);
    memo_.resize(inst.dim() + 1);
    for (int j = 2; j <= inst.dim(); ++j) kernels_[j] = build_k_stage_kernel(inst, m, j - 1);
  }

  double value(int stage, const long* idx) {
    for (int i = 0; i < inst_.balls(); ++i)
      if (idx[i] <= 0) return 0.0;
    if (stage == 1) return k_stage_one_value(idx, inst_, m_, flat_.centers, flat_.radii, 0);
    auto& memo = memo_[stage];
    std::uint64_t key = 0;
    for (int i = 0; i < inst_.balls(); ++i)
      key = key * static_cast<std::uint64_t>(m_ + 1) + static_cast<std::uint64_t>(idx[i]);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double acc = 0.0;
    std::array<long, kMaxBalls> child{};
    for (const auto& t : kernels_[stage]) {
      bool ok = true;
      for (int i = 0; i < inst_.balls(); ++i) {
        child[i] = idx[i] - t.a[i];
        if (child[i] < 1) {
          ok = false;
          break;
        }
      }
      if (ok) acc += t.w * value(stage - 1, child.data());
    }
    memo.emplace(key, acc);
    return acc;
  }

 private:
  const KBallInstance& inst_;
  long m_;
  FlatCenters flat_;
  std::vector<std::vector<KKernelTerm>> kernels_;
  std::vector<std::unordered_map<std::uint64_t, double>> memo_;
};

KStaircaseTable k_stage_one_table(const KBallInstance& inst, long m) {
  KStaircaseTable t(m, inst.radii);
  const FlatCenters flat = flatten_instance(inst);
  const int k = inst.balls();
  std::array<long, kMaxBalls> idx{};
  const std::size_t total = t.entry_count();
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rem = f;
    for (int i = k - 1; i >= 0; --i) {
      idx[i] = static_cast<long>(rem % (m + 1));
      rem /= (m + 1);
    }
    t.data()[f] = k_stage_one_value(idx.data(), inst, m, flat.centers, flat.radii, 0);
  }
  return t;
}

}  // namespace

KStaircaseTable k_dp_stage(const KStaircaseTable& prev, int coord, const KBallInstance& inst,
                           int threads) {
  if (coord < 1 || coord >= inst.dim())
    throw PreconditionViolation("k_dp_stage applies to coordinates 2..n");
  const auto terms = build_k_stage_kernel(inst, prev.resolution(), coord);
  KStaircaseTable out(prev.resolution(), prev.radii());
  k_sweep(prev, out, terms, threads);
  return out;
}

long k_ball_resolution(int balls, int n, const Rational& delta) {
  return rat_ceil(Rational(2) * balls * n * n / delta).convert_to<long>();
}

KBallTrace run_k_ball(const KBallInstance& inst, long resolution, const KBallOptions& opts) {
  if (resolution < 1) throw PreconditionViolation("grid resolution must be >= 1");
  const int n = inst.dim();
  const bool dense = opts.full_tables || opts.keep_tables;
  KBallTrace trace;
  trace.resolution = resolution;

  std::array<long, kMaxBalls> top{};
  for (int i = 0; i < inst.balls(); ++i) top[i] = resolution;

  if (!dense) {
    if (n == 1) {
      const FlatCenters flat = flatten_instance(inst);
      trace.value = k_stage_one_value(top.data(), inst, resolution, flat.centers, flat.radii, 0);
    } else {
      LazyKBall lazy(inst, resolution);
      trace.value = lazy.value(n, top.data());
    }
    return trace;
  }

  KStaircaseTable cur = k_stage_one_table(inst, resolution);
  if (opts.keep_tables) trace.stages.push_back(cur);
  for (int j = 1; j < n; ++j) {
    cur = k_dp_stage(cur, j, inst, opts.threads);
    if (opts.keep_tables) trace.stages.push_back(cur);
  }
  trace.value = cur.at(top.data());
  return trace;
}

ApproxResult approx_k_ball_volume(const KBallInstance& inst, const Rational& delta,
                                  const KBallOptions& opts) {
  if (delta <= 0 || delta > Rational(1, 2))
    throw PreconditionViolation("k-ball tolerance must satisfy 0 < delta <= 1/2");
  const long m = k_ball_resolution(inst.balls(), inst.dim(), delta);
  KBallTrace trace = run_k_ball(inst, m, opts);
  ApproxResult out;
  out.value = trace.value;
  out.delta = delta;
  out.M_used = m;
  out.lower_bound_exact = true;
  return out;
}

}  // namespace cpvol
