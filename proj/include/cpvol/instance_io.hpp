#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cpvol/geometry.hpp"
#include "cpvol/rational.hpp"

namespace cpvol {

using Json = nlohmann::ordered_json;

// Raw payloads as parsed from instance files; engine-level validation
// happens when the matching engine instance is constructed.
struct TwoBallFile {
  RatVec c;
  Rational r;
};

struct KBallFile {
  std::vector<RatVec> centers;
  std::vector<Rational> radii;
};

struct KnapsackFile {
  std::vector<long long> a;
};

struct VPolytopeFile {
  std::vector<RatVec> vertices;
};

struct BenchRun {
  int n = 0;
  Rational delta;
};

struct BenchFile {
  std::vector<BenchRun> runs;
};

using InstanceFile = std::variant<TwoBallFile, KBallFile, KnapsackFile, VPolytopeFile, BenchFile>;

InstanceFile parse_instance(const Json& doc);
InstanceFile load_instance(const std::string& path);

// List of balls an oracle can consume, from any ball-shaped instance kind.
std::vector<CrossPolytope> instance_balls(const InstanceFile& inst);

// FNV-1a 64 over the canonical serialization; hex string.
std::string instance_digest(const Json& doc);

// Canonical single-line serialization used for stdout and digests. All
// non-integer numbers travel as strings, so parse + re-dump is the identity.
std::string canonical_dump(const Json& doc);

Json rational_json(const Rational& q);

}  // namespace cpvol
