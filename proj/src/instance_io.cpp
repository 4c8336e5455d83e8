#include "cpvol/instance_io.hpp"

#include <cstdio>
#include <fstream>

#include "cpvol/errors.hpp"

namespace cpvol {

namespace {

Rational field_rational(const Json& v, const char* what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw InvalidInstance(std::string("expected a rational string for ") + what);
}

RatVec field_vector(const Json& v, const char* what) {
  if (!v.is_array() || v.empty())
    throw InvalidInstance(std::string("expected a nonempty array for ") + what);
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(field_rational(x, what));
  return out;
}

const Json& require(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InvalidInstance(std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

InstanceFile parse_instance(const Json& doc) {
  if (!doc.is_object()) throw InvalidInstance("instance file must hold a JSON object");
  const Json& kind_field = require(doc, "kind");
  if (!kind_field.is_string()) throw InvalidInstance("\"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();

  if (kind == "two_balls") {
    TwoBallFile f;
    f.c = field_vector(require(doc, "c"), "c");
    f.r = field_rational(require(doc, "r"), "r");
    return f;
  }
  if (kind == "k_balls") {
    KBallFile f;
    const Json& centers = require(doc, "centers");
    if (!centers.is_array() || centers.empty())
      throw InvalidInstance("\"centers\" must be a nonempty array of vectors");
    for (const auto& c : centers) f.centers.push_back(field_vector(c, "centers"));
    const Json& radii = require(doc, "radii");
    if (!radii.is_array() || radii.size() != f.centers.size())
      throw InvalidInstance("\"radii\" must list one radius per center");
    for (const auto& r : radii) f.radii.push_back(field_rational(r, "radii"));
    for (const auto& c : f.centers)
      if (c.size() != f.centers[0].size())
        throw InvalidInstance("all centers must share one dimension");
    return f;
  }
  if (kind == "knapsack_dual") {
    KnapsackFile f;
    const Json& a = require(doc, "a");
    if (!a.is_array() || a.empty()) throw InvalidInstance("\"a\" must be a nonempty array");
    for (const auto& x : a) {
      if (!x.is_number_integer()) throw InvalidInstance("\"a\" entries must be integers");
      f.a.push_back(x.get<long long>());
    }
    return f;
  }
  if (kind == "v_polytope") {
    VPolytopeFile f;
    const Json& verts = require(doc, "vertices");
    if (!verts.is_array() || verts.empty())
      throw InvalidInstance("\"vertices\" must be a nonempty array of vectors");
    for (const auto& v : verts) f.vertices.push_back(field_vector(v, "vertices"));
    for (const auto& v : f.vertices)
      if (v.size() != f.vertices[0].size())
        throw InvalidInstance("all vertices must share one dimension");
    return f;
  }
  if (kind == "bench") {
    BenchFile f;
    const Json& runs = require(doc, "runs");
    if (!runs.is_array()) throw InvalidInstance("\"runs\" must be an array");
    for (const auto& r : runs) {
      BenchRun run;
      const Json& n = require(r, "n");
      if (!n.is_number_integer() || n.get<long long>() < 1)
        throw InvalidInstance("bench run needs a positive integer \"n\"");
      run.n = static_cast<int>(n.get<long long>());
      run.delta = field_rational(require(r, "delta"), "delta");
      f.runs.push_back(std::move(run));
    }
    return f;
  }
  throw InvalidInstance("unknown instance kind \"" + kind + "\"");
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open instance file " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw InvalidInstance(std::string("instance file is not valid JSON: ") + e.what());
  }
  return parse_instance(doc);
}

std::vector<CrossPolytope> instance_balls(const InstanceFile& inst) {
  if (const auto* two = std::get_if<TwoBallFile>(&inst)) {
    std::vector<CrossPolytope> balls;
    balls.emplace_back(RatVec(two->c.size(), Rational(0)), Rational(1));
    balls.emplace_back(two->c, two->r);
    return balls;
  }
  if (const auto* kb = std::get_if<KBallFile>(&inst)) {
    std::vector<CrossPolytope> balls;
    for (size_t i = 0; i < kb->centers.size(); ++i) balls.emplace_back(kb->centers[i], kb->radii[i]);
    return balls;
  }
  throw PreconditionViolation("this command needs a ball-shaped instance (two_balls or k_balls)");
}

std::string canonical_dump(const Json& doc) { return doc.dump(); }

std::string instance_digest(const Json& doc) {
  const std::string bytes = canonical_dump(doc);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json rational_json(const Rational& q) { return Json(to_string(q)); }

}  // namespace cpvol
