#pragma once

#include <stdexcept>
#include <string>

namespace cpvol {

// Malformed input: bad schema, inconsistent dimensions, unparseable numbers.
// CLI exit code 2.
struct InvalidInstance : std::runtime_error {
  explicit InvalidInstance(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid input that violates an algorithm's precondition
// (e.g. ||c||_1 > r, out-of-range tolerance, odd ||a||_1). CLI exit code 3.
struct PreconditionViolation : std::runtime_error {
  explicit PreconditionViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-general-position V-polytope input (a facet hyperplane carries more
// than n vertices). CLI exit code 4.
struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& msg) : std::runtime_error(msg) {}
};

// The origin is not strictly interior after ingestion re-centering
// (flat vertex set), or the half-space test succeeded on the far side.
struct OriginNotInterior : PreconditionViolation {
  explicit OriginNotInterior(const std::string& msg) : PreconditionViolation(msg) {}
};

}  // namespace cpvol
