#pragma once

#include <cstdint>
#include <vector>

#include "cpvol/rational.hpp"

namespace cpvol {

// Shared result shape for the approximation engines.
struct ApproxResult {
  double value = 0.0;
  Rational delta;          // guaranteed upper relative error
  long M_used = 0;         // grid resolution actually used
  bool lower_bound_exact = false;  // exact-arithmetic guarantee Vol <= value
};

// Normalized pair instance: first ball C(0,1), second C(c,r) with c >= 0,
// 0 < r <= 1 and ||c||_1 <= r (each center inside the other ball).
struct TwoBallInstance {
  RatVec c;
  Rational r;

  TwoBallInstance(RatVec c, Rational r);
  int dim() const { return static_cast<int>(c.size()); }
};

// Dense (M+1)x(M+1) stage table. Entry (k,l) holds the stage value at the
// grid point (k/M, r*l/M). Row 0 and column 0 are zero for every stage
// past the initial all-ones table.
class StaircaseTable {
 public:
  StaircaseTable(long resolution, Rational second_radius);
  static StaircaseTable initial(long resolution, Rational second_radius);

  long resolution() const { return m_; }
  const Rational& second_radius() const { return r_; }

  double at(long k, long l) const {
    if (k < 0 || l < 0) return 0.0;
    return values_[static_cast<size_t>(k) * (m_ + 1) + l];
  }
  double* row(long k) { return values_.data() + static_cast<size_t>(k) * (m_ + 1); }
  const double* row(long k) const { return values_.data() + static_cast<size_t>(k) * (m_ + 1); }

  bool is_monotone() const;
  const std::vector<double>& raw() const { return values_; }

 private:
  long m_;
  Rational r_;
  std::vector<double> values_;
};

// One weighted shift of the previous table: contributes w * prev(k-a, l-b).
struct KernelTerm {
  std::int32_t a;
  std::int32_t b;
  double w;
};

// Sorted, deduplicated cell-crossing positions shared by every grid point of
// one stage, plus the kink points; consecutive entries bound intervals on
// which both cell indices are constant for every (u,v) on the grid.
std::vector<KernelTerm> build_stage_kernel(long resolution, const Rational& c_i,
                                           const Rational& r);

// Per-point breakpoint list T_i(u,v): every s in [-1,1] where u-|s| or
// v-|s-c_i| crosses a grid level, plus {-1, 0, c_i, 1} clipped to [-1,1].
std::vector<Rational> breakpoints(const Rational& u, const Rational& v, const Rational& c_i,
                                  long resolution, const Rational& r);

// One convolution stage: exact integral of the staircase extension of
// `prev` against the shift kernel for coordinate offset c_i.
StaircaseTable dp_stage(const StaircaseTable& prev, const Rational& c_i, int threads = 1);

// Closed form for the first stage: the grid value at (k/M, r*l/M) is the
// length of [-u,u] ∩ [c1-v, c1+v] ∩ [-1,1].
double stage_one_value(long k, long l, long resolution, double r, double c1);

struct TwoBallOptions {
  int threads = 1;
  // Evaluate every stage densely (the literal per-stage algorithm). Off by
  // default: only entries reachable from the output grid point are computed,
  // which is bit-identical and much cheaper for the final stages.
  bool full_tables = false;
  bool keep_tables = false;  // implies full_tables; records per-stage tables
};

struct TwoBallTrace {
  double value = 0.0;
  long resolution = 0;
  std::vector<StaircaseTable> stages;  // stages 1..n when keep_tables
};

long two_ball_resolution(int n, const Rational& delta);

// Engine entry with explicit grid resolution (bench and tests).
TwoBallTrace run_two_ball(const TwoBallInstance& inst, long resolution,
                          const TwoBallOptions& opts = {});

// Z with Vol(C(0,1) ∩ C(c,r)) <= Z <= (1+delta) * Vol, delta in (0,1).
ApproxResult approx_two_ball_volume(const TwoBallInstance& inst, const Rational& delta,
                                    const TwoBallOptions& opts = {});

}  // namespace cpvol
