#include "cpvol/vpolytope.hpp"

#include <map>

#include "cpvol/errors.hpp"
#include "cpvol/linalg.hpp"

namespace cpvol {

VPolytopeInstance::VPolytopeInstance(std::vector<RatVec> vertices_in)
    : vertices(std::move(vertices_in)) {
  if (vertices.empty()) throw InvalidInstance("v-polytope needs at least one vertex");
  const size_t n = vertices[0].size();
  if (n == 0) throw InvalidInstance("v-polytope needs dimension >= 1");
  for (const auto& v : vertices)
    if (v.size() != n) throw InvalidInstance("v-polytope vertices must share one dimension");
  if (vertices.size() < n + 1)
    throw InvalidInstance("v-polytope needs at least n+1 vertices to enclose volume");
}

std::optional<RatVec> facet_test(const std::vector<int>& subset,
                                 const std::vector<RatVec>& vertices) {
  const size_t n = vertices[0].size();
  if (subset.size() != n) throw InvalidInstance("facet test needs an n-subset");
  RatMat rows;
  rows.reserve(n);
  for (int idx : subset) rows.push_back(vertices[static_cast<size_t>(idx)]);
  auto normal = solve_linear(std::move(rows), RatVec(n, Rational(1)));
  if (!normal) return std::nullopt;

  bool all_below = true, all_above = true;
  for (const auto& v : vertices) {
    Rational dot = 0;
    for (size_t j = 0; j < n; ++j) dot += (*normal)[j] * v[j];
    if (dot > 1) all_below = false;
    if (dot < 1) all_above = false;
    if (!all_below && !all_above) return std::nullopt;
  }
  if (all_below) return normal;
  // all_above: the hull sits beyond the hyperplane, so the origin cannot be
  // interior; with centroid re-centering this flags a broken input.
  throw OriginNotInterior("facet half-space test succeeded on the far side");
}

VPolytopeVolume exact_volume_detail(const VPolytopeInstance& inst) {
  const size_t n = static_cast<size_t>(inst.dim());
  const size_t count = inst.vertices.size();

  // Re-center by the centroid; interior for any full-dimensional hull.
  RatVec centroid(n, Rational(0));
  for (const auto& v : inst.vertices)
    for (size_t j = 0; j < n; ++j) centroid[j] += v[j];
  for (auto& x : centroid) x /= Rational(static_cast<long>(count));
  std::vector<RatVec> pts(count, RatVec(n));
  for (size_t i = 0; i < count; ++i)
    for (size_t j = 0; j < n; ++j) pts[i][j] = inst.vertices[i][j] - centroid[j];

  std::map<RatVec, std::vector<int>> seen;  // canonical normal -> first subset
  Rational total = 0;
  long facets = 0;

  std::vector<int> subset(n);
  for (size_t i = 0; i < n; ++i) subset[i] = static_cast<int>(i);
  while (true) {
    if (auto normal = facet_test(subset, pts)) {
      auto [it, fresh] = seen.emplace(*normal, subset);
      if (!fresh)
        throw DegenerateInput("two vertex subsets span one facet hyperplane (not in general position)");
      RatMat m;
      m.reserve(n);
      for (int idx : subset) m.push_back(pts[static_cast<size_t>(idx)]);
      total += rat_abs(determinant(std::move(m)));
      ++facets;
    }
    // next combination
    int pos = static_cast<int>(n) - 1;
    while (pos >= 0 && subset[static_cast<size_t>(pos)] ==
                           static_cast<int>(count - n + static_cast<size_t>(pos)))
      --pos;
    if (pos < 0) break;
    ++subset[static_cast<size_t>(pos)];
    for (size_t j = static_cast<size_t>(pos) + 1; j < n; ++j) subset[j] = subset[j - 1] + 1;
  }

  if (facets == 0)
    throw OriginNotInterior("no facet passed the half-space test: vertex set is not full-dimensional");
  return {total / Rational(factorial(static_cast<int>(n))), facets};
}

Rational exact_volume(const VPolytopeInstance& inst) { return exact_volume_detail(inst).volume; }

}  // namespace cpvol
