#pragma once

#include <vector>

#include "cpvol/rational.hpp"
#include "cpvol/staircase.hpp"

namespace cpvol {

// Positive integer weight vector a defining P_a = conv{±e_1,...,±e_n, a}.
// Normalized to non-increasing order on ingestion (the volume is
// permutation-invariant), which also pins the engine's stage order.
struct KnapsackDualInstance {
  std::vector<long long> a;

  explicit KnapsackDualInstance(std::vector<long long> a);
  int dim() const { return static_cast<int>(a.size()); }
  Rational weight_sum() const;
};

struct KnapsackRunParams {
  Rational epsilon;      // effective tolerance after clamping to 1/2
  Rational beta;         // 1 - epsilon / (2 n ||a||_1)
  Rational inner_delta;  // epsilon^2 / (4 n)
};

KnapsackRunParams build_params(const KnapsackDualInstance& inst, const Rational& epsilon);

// The one materialized intersection instance: C(0,1) ∩ C((1-beta)a, beta).
TwoBallInstance q1_instance(const KnapsackDualInstance& inst, const KnapsackRunParams& params);

struct KnapsackDualResult {
  double value = 0.0;          // V-hat
  double inner_value = 0.0;    // Z from the two-ball engine
  Rational epsilon;            // effective tolerance
  Rational beta;
  Rational inner_delta;
  long M_used = 0;
};

// (1-eps) Vol(P_a) <= V-hat <= (1+eps) Vol(P_a).
KnapsackDualResult approx_knapsack_dual_volume(const KnapsackDualInstance& inst,
                                               const Rational& epsilon,
                                               const TwoBallOptions& opts = {});

}  // namespace cpvol
