#include "cpvol/knapsack_dual.hpp"

#include <algorithm>
#include <cmath>

#include "cpvol/errors.hpp"
#include "cpvol/geometry.hpp"

namespace cpvol {

KnapsackDualInstance::KnapsackDualInstance(std::vector<long long> a_in) : a(std::move(a_in)) {
  if (a.empty()) throw InvalidInstance("knapsack-dual instance needs dimension >= 1");
  for (long long x : a)
    if (x < 1) throw PreconditionViolation("knapsack-dual weights must be positive integers");
  std::sort(a.begin(), a.end(), std::greater<long long>());
}

Rational KnapsackDualInstance::weight_sum() const {
  BigInt s = 0;
  for (long long x : a) s += x;
  return Rational(s);
}

KnapsackRunParams build_params(const KnapsackDualInstance& inst, const Rational& epsilon) {
  if (epsilon <= 0) throw PreconditionViolation("epsilon must be positive");
  KnapsackRunParams p;
  p.epsilon = std::min(epsilon, Rational(1, 2));
  const Rational norm = inst.weight_sum();
  p.beta = 1 - p.epsilon / (Rational(2) * inst.dim() * norm);
  p.inner_delta = p.epsilon * p.epsilon / (Rational(4) * inst.dim());
  return p;
}

TwoBallInstance q1_instance(const KnapsackDualInstance& inst, const KnapsackRunParams& params) {
  RatVec c(inst.a.size());
  const Rational shrink = 1 - params.beta;
  for (size_t i = 0; i < inst.a.size(); ++i) c[i] = shrink * inst.a[i];
  return TwoBallInstance(std::move(c), params.beta);
}

namespace {

// 1 - beta^n with beta = 1 - x, evaluated as -expm1(n log1p(-x)) so the
// leading digits survive when x = eps/(2n||a||_1) is tiny.
double one_minus_pow(const Rational& x, int n) {
  const double xd = to_double(x);
  return -std::expm1(static_cast<double>(n) * std::log1p(-xd));
}

}  // namespace

KnapsackDualResult approx_knapsack_dual_volume(const KnapsackDualInstance& inst,
                                               const Rational& epsilon,
                                               const TwoBallOptions& opts) {
  const KnapsackRunParams params = build_params(inst, epsilon);
  const TwoBallInstance inner = q1_instance(inst, params);
  const ApproxResult z = approx_two_ball_volume(inner, params.inner_delta, opts);

  const int n = inst.dim();
  const double ball_volume = to_double(cross_polytope_volume(n, Rational(1)));
  const double denom = one_minus_pow(1 - params.beta, n);
  const double head = ball_volume - z.value;
  if (!(head > 0.0))
    throw PreconditionViolation("inner approximation consumed the whole ball volume");

  KnapsackDualResult out;
  out.value = to_double(1 + params.epsilon) / denom * head;
  out.inner_value = z.value;
  out.epsilon = params.epsilon;
  out.beta = params.beta;
  out.inner_delta = params.inner_delta;
  out.M_used = z.M_used;
  return out;
}

}  // namespace cpvol
