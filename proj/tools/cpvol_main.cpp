#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpvol/errors.hpp"
#include "cpvol/instance_io.hpp"
#include "cpvol/kball.hpp"
#include "cpvol/kernels.hpp"
#include "cpvol/knapsack_dual.hpp"
#include "cpvol/oracles.hpp"
#include "cpvol/staircase.hpp"
#include "cpvol/vpolytope.hpp"

namespace {

using cpvol::Json;
using cpvol::Rational;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInstance = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitDegenerate = 4;

struct CommonArgs {
  std::string instance_path;
  std::string output_path;
  std::string delta_text;
  std::string epsilon_text;
  std::uint64_t seed = 1;
  long long samples = 100000;
  int threads = 1;
  bool full_tables = false;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Json load_doc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cpvol::InvalidInstance("cannot open instance file " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw cpvol::InvalidInstance(std::string("instance file is not valid JSON: ") + e.what());
  }
  return doc;
}

void emit(const Json& record, const CommonArgs& args) {
  const std::string line = cpvol::canonical_dump(record);
  std::cout << line << "\n";
  if (!args.output_path.empty()) {
    std::ofstream out(args.output_path);
    if (!out) throw cpvol::InvalidInstance("cannot open output file " + args.output_path);
    out << line << "\n";
  }
}

Json result_record(const std::string& engine, double value, bool lower_exact,
                   const Rational& upper_factor, const Json& params, long long wall_ms,
                   const std::string& digest) {
  Json rec;
  rec["engine"] = engine;
  rec["value"] = cpvol::format_decimal(value);
  rec["guarantee"] = Json{{"lower_exact", lower_exact},
                          {"upper_factor", cpvol::to_string(upper_factor)}};
  rec["params"] = params;
  rec["wall_time_ms"] = wall_ms;
  rec["instance_digest"] = digest;
  return rec;
}

Rational parse_flag_rational(const std::string& text, const char* what) {
  if (text.empty()) throw cpvol::PreconditionViolation(std::string("missing --") + what);
  return cpvol::parse_rational(text);
}

int run_volume_two_balls(const CommonArgs& args) {
  const Json doc = load_doc(args.instance_path);
  const auto file = cpvol::parse_instance(doc);
  const auto* two = std::get_if<cpvol::TwoBallFile>(&file);
  if (two == nullptr) throw cpvol::InvalidInstance("expected a two_balls instance");
  const Rational delta = parse_flag_rational(args.delta_text, "delta");
  cpvol::TwoBallInstance inst(two->c, two->r);
  cpvol::TwoBallOptions opts;
  opts.threads = args.threads;
  opts.full_tables = args.full_tables;
  Timer timer;
  const auto res = cpvol::approx_two_ball_volume(inst, delta, opts);
  Json params;
  params["M"] = res.M_used;
  params["beta"] = nullptr;
  params["delta"] = cpvol::to_string(delta);
  params["epsilon"] = nullptr;
  emit(result_record("two_balls", res.value, res.lower_bound_exact, 1 + delta, params,
                     timer.ms(), cpvol::instance_digest(doc)),
       args);
  return kExitOk;
}

int run_volume_k_balls(const CommonArgs& args) {
  const Json doc = load_doc(args.instance_path);
  const auto file = cpvol::parse_instance(doc);
  const auto* kb = std::get_if<cpvol::KBallFile>(&file);
  if (kb == nullptr) throw cpvol::InvalidInstance("expected a k_balls instance");
  const Rational delta = parse_flag_rational(args.delta_text, "delta");
  cpvol::KBallInstance inst(kb->centers, kb->radii);
  cpvol::KBallOptions opts;
  opts.threads = args.threads;
  opts.full_tables = args.full_tables;
  Timer timer;
  const auto res = cpvol::approx_k_ball_volume(inst, delta, opts);
  Json params;
  params["M"] = res.M_used;
  params["beta"] = nullptr;
  params["delta"] = cpvol::to_string(delta);
  params["epsilon"] = nullptr;
  emit(result_record("k_balls", res.value, res.lower_bound_exact, 1 + delta, params, timer.ms(),
                     cpvol::instance_digest(doc)),
       args);
  return kExitOk;
}

int run_volume_knapsack(const CommonArgs& args) {
  const Json doc = load_doc(args.instance_path);
  const auto file = cpvol::parse_instance(doc);
  const auto* kf = std::get_if<cpvol::KnapsackFile>(&file);
  if (kf == nullptr) throw cpvol::InvalidInstance("expected a knapsack_dual instance");
  const Rational epsilon = parse_flag_rational(args.epsilon_text, "epsilon");
  cpvol::KnapsackDualInstance inst(kf->a);
  cpvol::TwoBallOptions opts;
  opts.threads = args.threads;
  opts.full_tables = args.full_tables;
  Timer timer;
  const auto res = cpvol::approx_knapsack_dual_volume(inst, epsilon, opts);
  Json params;
  params["M"] = res.M_used;
  params["beta"] = cpvol::to_string(res.beta);
  params["delta"] = cpvol::to_string(res.inner_delta);
  params["epsilon"] = cpvol::to_string(res.epsilon);
  emit(result_record("knapsack_dual", res.value, false, 1 + res.epsilon, params, timer.ms(),
                     cpvol::instance_digest(doc)),
       args);
  return kExitOk;
}

int run_volume_v_polytope(const CommonArgs& args) {
  const Json doc = load_doc(args.instance_path);
  const auto file = cpvol::parse_instance(doc);
  const auto* vp = std::get_if<cpvol::VPolytopeFile>(&file);
  if (vp == nullptr) throw cpvol::InvalidInstance("expected a v_polytope instance");
  cpvol::VPolytopeInstance inst(vp->vertices);
  Timer timer;
  const auto detail = cpvol::exact_volume_detail(inst);
  Json params;
  params["M"] = nullptr;
  params["beta"] = nullptr;
  params["delta"] = nullptr;
  params["epsilon"] = nullptr;
  params["facets"] = detail.facet_count;
  Json rec = result_record("v_polytope", cpvol::to_double(detail.volume), true, Rational(1),
                           params, timer.ms(), cpvol::instance_digest(doc));
  rec["value_rational"] = cpvol::to_string(detail.volume);
  emit(rec, args);
  return kExitOk;
}

int run_oracle_exact(const CommonArgs& args) {
  const Json doc = load_doc(args.instance_path);
  const auto file = cpvol::parse_instance(doc);
  Timer timer;
  Rational volume;
  std::string engine;
  if (const auto* vp = std::get_if<cpvol::VPolytopeFile>(&file)) {
    volume = cpvol::exact_hull_volume(vp->vertices);
    engine = "oracle_hull";
  } else if (const auto* kf = std::get_if<cpvol::KnapsackFile>(&file)) {
    // P_a = conv{±e_i, a}
    const size_t n = kf->a.size();
    std::vector<cpvol::RatVec> pts;
    for (size_t i = 0; i < n; ++i) {
      cpvol::RatVec e(n, Rational(0));
      e[i] = 1;
      pts.push_back(e);
      e[i] = -1;
      pts.push_back(e);
    }
    cpvol::RatVec a(n);
    for (size_t i = 0; i < n; ++i) a[i] = kf->a[i];
    pts.push_back(a);
    volume = cpvol::exact_hull_volume(pts);
    engine = "oracle_hull";
  } else {
    volume = cpvol::exact_intersection_volume(cpvol::instance_balls(file));
    engine = "oracle_intersection";
  }
  Json params;
  params["M"] = nullptr;
  params["beta"] = nullptr;
  params["delta"] = nullptr;
  params["epsilon"] = nullptr;
  Json rec = result_record(engine, cpvol::to_double(volume), true, Rational(1), params,
                           timer.ms(), cpvol::instance_digest(doc));
  rec["value_rational"] = cpvol::to_string(volume);
  emit(rec, args);
  return kExitOk;
}

int run_oracle_mc(const CommonArgs& args) {
  const Json doc = load_doc(args.instance_path);
  const auto file = cpvol::parse_instance(doc);
  Timer timer;
  const auto est = cpvol::mc_volume(cpvol::instance_balls(file), args.samples, args.seed);
  Json rec;
  rec["engine"] = "oracle_mc";
  rec["estimate"] = cpvol::format_decimal(est.estimate);
  rec["half_width"] = cpvol::format_decimal(est.half_width);
  rec["samples"] = est.samples;
  rec["seed"] = est.seed;
  rec["wall_time_ms"] = timer.ms();
  rec["instance_digest"] = cpvol::instance_digest(doc);
  emit(rec, args);
  return kExitOk;
}

int run_check_reduction(const CommonArgs& args) {
  const Json doc = load_doc(args.instance_path);
  const auto file = cpvol::parse_instance(doc);
  const auto* kf = std::get_if<cpvol::KnapsackFile>(&file);
  if (kf == nullptr) throw cpvol::InvalidInstance("expected a knapsack_dual instance");
  Timer timer;
  const auto check = cpvol::hardness_reduction_check(kf->a);
  Json rec;
  rec["lhs"] = check.lhs;
  rec["rhs"] = check.rhs;
  rec["pass"] = check.pass;
  rec["delta"] = cpvol::to_string(check.delta);
  rec["epsilon"] = cpvol::to_string(check.epsilon);
  rec["wall_time_ms"] = timer.ms();
  rec["instance_digest"] = cpvol::instance_digest(doc);
  emit(rec, args);
  return kExitOk;
}

// Deterministic instance for a bench row: r = 3/4 and seeded nonnegative
// offsets with ||c||_1 <= r/2.
cpvol::TwoBallInstance bench_instance(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Rational r(3, 4);
  cpvol::RatVec c(static_cast<size_t>(n));
  for (auto& x : c) x = Rational(static_cast<long>(rng() % 17)) * r / Rational(32L * n);
  return cpvol::TwoBallInstance(c, r);
}

int run_bench(const CommonArgs& args) {
  const Json doc = load_doc(args.instance_path);
  const auto file = cpvol::parse_instance(doc);
  const auto* bench = std::get_if<cpvol::BenchFile>(&file);
  if (bench == nullptr) throw cpvol::InvalidInstance("expected a bench config");
  Json rows = Json::array();
  for (size_t i = 0; i < bench->runs.size(); ++i) {
    const auto& run = bench->runs[i];
    const auto inst = bench_instance(run.n, args.seed + i);
    cpvol::TwoBallOptions opts;
    opts.threads = args.threads;
    opts.full_tables = true;  // measure the literal per-stage algorithm
    const long m = cpvol::two_ball_resolution(run.n, run.delta);
    Timer timer;
    const auto trace = cpvol::run_two_ball(inst, m, opts);
    Json row;
    row["n"] = run.n;
    row["delta"] = cpvol::to_string(run.delta);
    row["M"] = m;
    row["wall_time_ms"] = timer.ms();
    row["value"] = cpvol::format_decimal(trace.value);
    rows.push_back(std::move(row));
  }
  Json rec;
  rec["engine"] = "bench_two_balls";
  rec["kernel"] = cpvol::kern::active_kernel_name();
  rec["rows"] = rows;
  rec["instance_digest"] = cpvol::instance_digest(doc);
  emit(rec, args);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic cross-polytope volume toolkit"};
  app.require_subcommand(1);
  CommonArgs args;

  auto add_common = [&args](CLI::App* cmd, bool needs_instance = true) {
    auto* opt = cmd->add_option("-i,--instance", args.instance_path, "instance JSON file");
    if (needs_instance) opt->required();
    cmd->add_option("-o,--output", args.output_path, "also write the JSON record here");
    cmd->add_option("--threads", args.threads, "intra-stage parallel width (default 1)");
    cmd->add_flag("--full-tables", args.full_tables, "evaluate every stage densely");
  };

  auto* volume = app.add_subcommand("volume", "approximation and exact volume engines");
  volume->require_subcommand(1);
  auto* two = volume->add_subcommand("two-balls", "staircase FPTAS for C(0,1) ∩ C(c,r)");
  add_common(two);
  two->add_option("--delta", args.delta_text, "relative error bound in (0,1)")->required();
  auto* kb = volume->add_subcommand("k-balls", "staircase FPTAS for ∩ C(p_i, r_i)");
  add_common(kb);
  kb->add_option("--delta", args.delta_text, "relative error bound in (0,1/2]")->required();
  auto* kd = volume->add_subcommand("knapsack-dual", "FPTAS for Vol(conv{±e_i, a})");
  add_common(kd);
  kd->add_option("--epsilon", args.epsilon_text, "relative error bound")->required();
  auto* vp = volume->add_subcommand("v-polytope", "exact volume of conv(V), |V| = n+k");
  add_common(vp);

  auto* oracle = app.add_subcommand("oracle", "desk-scale exact and statistical oracles");
  oracle->require_subcommand(1);
  auto* oexact = oracle->add_subcommand("exact", "exact rational volume (n <= 4)");
  add_common(oexact);
  auto* omc = oracle->add_subcommand("mc", "seeded rejection-sampling estimate");
  add_common(omc);
  omc->add_option("--samples", args.samples, "sample count (default 100000)");
  omc->add_option("--seed", args.seed, "RNG seed (default 1)");

  auto* check = app.add_subcommand("check", "consistency checks");
  check->require_subcommand(1);
  auto* reduction = check->add_subcommand("reduction", "rounded shell volume vs sign count");
  add_common(reduction);

  auto* bench = app.add_subcommand("bench", "timing table for the two-ball engine");
  add_common(bench);
  bench->add_option("--seed", args.seed, "instance generator seed (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInstance;
  }

  try {
    if (two->parsed()) return run_volume_two_balls(args);
    if (kb->parsed()) return run_volume_k_balls(args);
    if (kd->parsed()) return run_volume_knapsack(args);
    if (vp->parsed()) return run_volume_v_polytope(args);
    if (oexact->parsed()) return run_oracle_exact(args);
    if (omc->parsed()) return run_oracle_mc(args);
    if (reduction->parsed()) return run_check_reduction(args);
    if (bench->parsed()) return run_bench(args);
    std::cerr << "no subcommand selected\n";
    return kExitInvalidInstance;
  } catch (const cpvol::DegenerateInput& e) {
    std::cout << Json{{"error", e.what()}}.dump() << "\n";
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const cpvol::PreconditionViolation& e) {
    std::cout << Json{{"error", e.what()}}.dump() << "\n";
    std::cerr << "precondition violation: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const cpvol::InvalidInstance& e) {
    std::cout << Json{{"error", e.what()}}.dump() << "\n";
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitInvalidInstance;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", e.what()}}.dump() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInstance;
  }
}
