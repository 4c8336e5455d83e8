#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cpvol/rational.hpp"
#include "cpvol/staircase.hpp"

namespace cpvol {

inline constexpr int kMaxBalls = 4;

// Intersection instance for a constant number of balls: centers are
// translated so the first one sits at the origin, every radius lies in
// (0,1], and each center is strictly interior to every ball (pairwise
// containment ||p_i - p_j||_1 < r_j).
struct KBallInstance {
  std::vector<RatVec> centers;  // after translation; centers[0] == 0
  std::vector<Rational> radii;

  KBallInstance(std::vector<RatVec> centers, std::vector<Rational> radii);
  int dim() const { return static_cast<int>(centers[0].size()); }
  int balls() const { return static_cast<int>(centers.size()); }
};

// Dense (M+1)^k stage table over the grid (l_1 r_1, ..., l_k r_k)/M,
// last axis contiguous. Entries with any zero index are zero for every
// stage past the initial all-ones table.
class KStaircaseTable {
 public:
  KStaircaseTable(long resolution, std::vector<Rational> radii);
  static KStaircaseTable initial(long resolution, std::vector<Rational> radii);

  long resolution() const { return m_; }
  int balls() const { return static_cast<int>(radii_.size()); }
  const std::vector<Rational>& radii() const { return radii_; }
  std::size_t entry_count() const { return values_.size(); }

  std::size_t flatten(const long* idx) const {
    std::size_t f = 0;
    for (int i = 0; i < balls(); ++i) f = f * (m_ + 1) + static_cast<std::size_t>(idx[i]);
    return f;
  }
  double at(const long* idx) const {
    for (int i = 0; i < balls(); ++i)
      if (idx[i] < 0) return 0.0;
    return values_[flatten(idx)];
  }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  bool is_monotone() const;

 private:
  long m_;
  std::vector<Rational> radii_;
  std::vector<double> values_;
};

struct KKernelTerm {
  std::array<std::int32_t, kMaxBalls> a;
  double w;
};

std::vector<KKernelTerm> build_k_stage_kernel(const KBallInstance& inst, long resolution,
                                              int coord);

// Per-point breakpoint list for grid point u (one entry per ball) at
// coordinate `coord`: crossings of u_i - |s - p_{i,coord}| with the levels
// l*r_i/M, plus the kinks p_{i,coord} and the endpoints -1, 1.
std::vector<Rational> k_breakpoints(const RatVec& u, int coord, const KBallInstance& inst,
                                    long resolution);

KStaircaseTable k_dp_stage(const KStaircaseTable& prev, int coord, const KBallInstance& inst,
                           int threads = 1);

struct KBallOptions {
  int threads = 1;
  bool full_tables = false;
  bool keep_tables = false;
};

struct KBallTrace {
  double value = 0.0;
  long resolution = 0;
  std::vector<KStaircaseTable> stages;
};

long k_ball_resolution(int balls, int n, const Rational& delta);

KBallTrace run_k_ball(const KBallInstance& inst, long resolution, const KBallOptions& opts = {});

// Z with Vol(∩ C(p_i, r_i)) <= Z <= (1+delta) Vol, delta in (0, 1/2].
ApproxResult approx_k_ball_volume(const KBallInstance& inst, const Rational& delta,
                                  const KBallOptions& opts = {});

}  // namespace cpvol
