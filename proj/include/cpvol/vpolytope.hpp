#pragma once

#include <optional>
#include <vector>

#include "cpvol/rational.hpp"

namespace cpvol {

// Full-dimensional polytope given as the convex hull of n+k points in
// dimension n. Re-centered by the vertex centroid on ingestion so the
// origin is strictly interior whenever the hull is full-dimensional.
struct VPolytopeInstance {
  std::vector<RatVec> vertices;  // as given (un-translated)

  explicit VPolytopeInstance(std::vector<RatVec> vertices);
  int dim() const { return static_cast<int>(vertices[0].size()); }
  int excess() const { return static_cast<int>(vertices.size()) - dim(); }
};

// Solves a^T u = 1 for every u in the chosen n-subset; returns the normal
// when the subset spans a supporting hyperplane with every vertex on the
// a^T v <= 1 side, nullopt when the subset matrix is singular or some vertex
// lies strictly beyond. Throws OriginNotInterior when every vertex lies on
// the far side (impossible with an interior origin).
std::optional<RatVec> facet_test(const std::vector<int>& subset,
                                 const std::vector<RatVec>& vertices);

struct VPolytopeVolume {
  Rational volume;
  long facet_count = 0;
};

VPolytopeVolume exact_volume_detail(const VPolytopeInstance& inst);
Rational exact_volume(const VPolytopeInstance& inst);

}  // namespace cpvol
