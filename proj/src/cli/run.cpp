// Copyright 2026 The swipt-capacity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "../io/json_codec.hpp"
#include "swipt/cli.hpp"
#include "swipt/config.hpp"
#include "swipt/errors.hpp"
#include "swipt/io.hpp"
#include "swipt/montecarlo.hpp"
#include "swipt/region.hpp"
#include "swipt/shannon.hpp"
#include "swipt/solver.hpp"
#include "swipt/verify.hpp"

namespace swipt {
namespace {

using io::json;
namespace fs = std::filesystem;

struct Model {
  ConstraintSet constraints;
  HpaModel hpa;
  EhModel eh;
  ScaleReport scale;
};

// Physical parameters mapped to the unit-noise channel.
Model normalized(const RunConfig& cfg) {
  ConstraintSet c = cfg.states.empty()
                        ? ConstraintSet::static_peak(cfg.peak, cfg.avg_power, cfg.e_req)
                        : ConstraintSet{cfg.avg_power, cfg.states, cfg.e_req};
  const NormalizedModel n = normalize_spec(cfg.channel, c, cfg.hpa, cfg.eh);
  return {n.constraints, n.hpa, n.eh, n.report};
}

Model static_model(const RunConfig& cfg) {
  const NormalizedModel n = normalize_spec(
      cfg.channel, ConstraintSet::static_peak(cfg.peak, cfg.avg_power, cfg.e_req), cfg.hpa, cfg.eh);
  return {n.constraints, n.hpa, n.eh, n.report};
}

SolveOptions solve_options(const RunConfig& cfg, double amplitude_scale) {
  SolveOptions s;
  s.dx = cfg.dx * amplitude_scale;
  s.tol = cfg.tol;
  s.max_iter = cfg.max_iter;
  s.refine = cfg.refine;
  s.prune_threshold = cfg.prune_threshold;
  return s;
}

KktOptions kkt_options(const RunConfig& cfg, double amplitude_scale) {
  KktOptions k;
  k.check_step = (cfg.kkt_step > 0.0 ? cfg.kkt_step : cfg.dx / 10.0) * amplitude_scale;
  k.tol = cfg.kkt_tol;
  k.rule = numerics::QuadratureRule{}.with_nodes(cfg.kkt_nodes);
  return k;
}

RegionOptions region_options(const RunConfig& cfg, double amplitude_scale) {
  RegionOptions r;
  r.n_points = cfg.n_points;
  r.solve = solve_options(cfg, amplitude_scale);
  r.kkt = kkt_options(cfg, amplitude_scale);
  r.parallel = cfg.threads > 1;
  r.threads = cfg.threads;
  return r;
}

json kkt_json(const KktReport& r) {
  return {{"verdict", r.verdict},
          {"max_violation", io::num(r.max_violation)},
          {"max_support_residual", io::num(r.max_support_residual)},
          {"c", io::num(r.c)},
          {"lambda1", io::num(r.lambda1)},
          {"lambda2", io::num(r.lambda2)},
          {"tol", io::num(r.tol)}};
}

struct Outcome {
  json result;
  int code = kExitOk;
  std::vector<std::pair<std::string, std::string>> files;  ///< name suffix, contents
};

bool all_certified(const RegionCurve& c) {
  for (const auto& p : c.points) {
    if (!p.kkt_ok) return false;
  }
  return true;
}

void add_curve(Outcome& o, const RunConfig& cfg, const RegionCurve& curve, const std::string& suffix) {
  if (cfg.tabular) o.files.emplace_back(suffix + ".csv", curve_tabular(curve));
  if (cfg.structured) o.files.emplace_back(suffix + ".curve.json", curve_structured(curve));
  if (!all_certified(curve)) o.code = kExitUncertified;
}

json curve_summary(const RegionCurve& curve) {
  json pts = json::array();
  for (const auto& p : curve.points) pts.push_back(io::to_json(p));
  return {{"kind", to_string(curve.config.kind)}, {"points", pts}};
}

Outcome run_solve(const RunConfig& cfg) {
  const Model m = static_model(cfg);
  const SolveOptions so = solve_options(cfg, m.scale.amplitude_scale);
  const auto grid = build_grid(m.constraints.max_peak(), so.dx);
  SolveResult r = solve_weights(grid, m.constraints, m.hpa, m.eh, so);
  r = prune_support(r, m.constraints, m.hpa, m.eh, so);
  const KktReport rep = kkt_check(r, m.constraints, m.hpa, m.eh, kkt_options(cfg, m.scale.amplitude_scale));
  Outcome o;
  o.result = {{"distribution", io::to_json(r.distribution)},
              {"rate_nats", io::num(r.rate)},
              {"rate_bits", io::num(nats_to_bits(r.rate))},
              {"energy", io::num(r.energy)},
              {"power", io::num(r.power)},
              {"lambda1", io::num(r.lambda1)},
              {"lambda2", io::num(r.lambda2)},
              {"gap", io::num(r.gap)},
              {"iterations", r.iterations},
              {"prune_warning", r.prune_warning},
              {"kkt", kkt_json(rep)}};
  o.code = rep.verdict ? kExitOk : kExitUncertified;
  return o;
}

Outcome run_region(const RunConfig& cfg) {
  const Model m = normalized(cfg);
  const RegionOptions ro = region_options(cfg, m.scale.amplitude_scale);
  CurveConfig cc;
  cc.kind = parse_curve_kind(cfg.curve);
  cc.constraints = m.constraints;
  cc.hpa = m.hpa;
  cc.eh = m.eh;
  cc.dx = ro.solve.dx;
  cc.tol = ro.solve.tol;
  cc.n_max = cc.kind == CurveKind::kAsk ? cfg.n_max : 0;
  const RegionCurve curve = cfg.levels.empty() ? trace_curve(cc, ro) : trace_levels(cc, cfg.levels, ro);
  Outcome o;
  o.result = {{"curve", curve_summary(curve)}};
  add_curve(o, cfg, curve, "");
  return o;
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Outcome run_onoff(const RunConfig& cfg) {
  const Model m = static_model(cfg);
  const RegionOptions ro = region_options(cfg, m.scale.amplitude_scale);
  const auto curves = sweep_onoff(m.constraints.max_peak(), cfg.p2s, m.constraints, m.hpa, m.eh, ro);
  Outcome o;
  json list = json::array();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    list.push_back({{"p2", cfg.p2s[i]}, {"curve", curve_summary(curves[i])}});
    add_curve(o, cfg, curves[i], "_p2_" + tag(cfg.p2s[i]));
  }
  o.result = {{"curves", list}};
  return o;
}

Outcome run_ask(const RunConfig& cfg) {
  const Model m = static_model(cfg);
  const RegionOptions ro = region_options(cfg, m.scale.amplitude_scale);
  const AskSweep s = sweep_ask(m.constraints, m.hpa, m.eh, cfg.sizes, ro);
  Outcome o;
  json list = json::array();
  add_curve(o, cfg, s.unconstrained, "_unconstrained");
  for (std::size_t i = 0; i < s.curves.size(); ++i) {
    list.push_back({{"n_max", cfg.sizes[i]},
                    {"max_gap_nats", io::num(s.max_gap[i])},
                    {"curve", curve_summary(s.curves[i])}});
    add_curve(o, cfg, s.curves[i], "_n" + std::to_string(cfg.sizes[i]));
  }
  o.result = {{"unconstrained", curve_summary(s.unconstrained)}, {"ask", list}};
  return o;
}

Outcome run_extended(const RunConfig& cfg) {
  const Model m = normalized(cfg);
  const SolveOptions so = solve_options(cfg, m.scale.amplitude_scale);
  EscalationOptions eo;
  eo.n_start = cfg.n_start;
  eo.kkt = kkt_options(cfg, m.scale.amplitude_scale);
  Outcome o;
  try {
    const ExtendedSolveResult r = escalate_support(m.constraints, m.hpa, m.eh, so, eo);
    const KktReport rep = kkt_check_extended(r, m.constraints, m.hpa, m.eh, eo.kkt);
    o.result = {{"distribution", io::to_json(r.distribution)},
                {"rate_nats", io::num(r.rate)},
                {"rate_bits", io::num(nats_to_bits(r.rate))},
                {"energy", io::num(r.energy)},
                {"power", io::num(r.power)},
                {"lambda1", io::num(r.lambda1)},
                {"lambda2", io::num(r.lambda2)},
                {"kkt", kkt_json(rep)}};
    o.code = rep.verdict ? kExitOk : kExitUncertified;
  } catch (const EscalationError& e) {
    o.result = {{"error", e.what()},
                {"best_rate_nats", io::num(e.best_rate())},
                {"support_size", e.support_size()}};
    o.code = kExitUncertified;
  }
  return o;
}

Outcome run_verify(const RunConfig& cfg) {
  const Model m = static_model(cfg);
  MassPointDistribution d = *cfg.distribution;
  for (auto& p : d.points) p.x *= m.scale.amplitude_scale;
  d.peak *= m.scale.amplitude_scale;
  const SolveResult r = as_result(d, m.hpa, m.eh);
  const KktReport rep = kkt_check(r, m.constraints, m.hpa, m.eh, kkt_options(cfg, m.scale.amplitude_scale));
  Outcome o;
  o.result = {{"rate_nats", io::num(r.rate)},
              {"energy", io::num(r.energy)},
              {"power", io::num(r.power)},
              {"kkt", kkt_json(rep)}};
  o.code = rep.verdict ? kExitOk : kExitUncertified;
  return o;
}

Outcome run_mc(const RunConfig& cfg) {
  const Model m = static_model(cfg);
  MassPointDistribution d;
  if (cfg.distribution) {
    d = *cfg.distribution;
    for (auto& p : d.points) p.x *= m.scale.amplitude_scale;
    d.peak *= m.scale.amplitude_scale;
  } else {
    const SolveOptions so = solve_options(cfg, m.scale.amplitude_scale);
    const auto grid = build_grid(m.constraints.max_peak(), so.dx);
    d = prune_support(solve_weights(grid, m.constraints, m.hpa, m.eh, so), m.constraints, m.hpa, m.eh, so)
            .distribution;
  }
  SimConfig sim;
  sim.n = cfg.mc_n;
  sim.seed = cfg.mc_seed;
  sim.hpa = m.hpa;
  sim.eh = m.eh;
  sim.threads = cfg.threads;
  const numerics::QuadratureRule rule = numerics::QuadratureRule{}.with_nodes(cfg.kkt_nodes);
  const Estimate mi = empirical_mi(d, sim);
  const Estimate en = empirical_energy(d, sim);
  const double mi_ref = mutual_information(d, m.hpa, rule);
  const double en_ref = average_energy(d, m.hpa, m.eh);
  auto z = [](const Estimate& e, double ref) {
    return e.std_error > 0.0 ? (e.value - ref) / e.std_error : (e.value == ref ? 0.0 : INFINITY);
  };
  const double z_mi = z(mi, mi_ref);
  const double z_en = z(en, en_ref);
  const bool ok = std::abs(z_mi) <= 3.0 && std::abs(z_en) <= 3.0;
  Outcome o;
  o.result = {{"distribution", io::to_json(d)},
              {"mi", {{"estimate", io::num(mi.value)}, {"std_error", io::num(mi.std_error)},
                      {"quadrature", io::num(mi_ref)}, {"z", io::num(z_mi)}}},
              {"energy", {{"estimate", io::num(en.value)}, {"std_error", io::num(en.std_error)},
                          {"analytic", io::num(en_ref)}, {"z", io::num(z_en)}}},
              {"n", mi.n},
              {"consistent", ok}};
  o.code = ok ? kExitOk : kExitUncertified;
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  switch (cfg.mode) {
    case Mode::kSolve: return run_solve(cfg);
    case Mode::kRegion: return run_region(cfg);
    case Mode::kOnOff: return run_onoff(cfg);
    case Mode::kExtended: return run_extended(cfg);
    case Mode::kAsk: return run_ask(cfg);
    case Mode::kVerify: return run_verify(cfg);
    case Mode::kMc: return run_mc(cfg);
  }
  throw ConfigError("unhandled mode");
}

const char* status_of(int code) {
  switch (code) {
    case kExitOk: return "ok";
    case kExitInfeasible: return "infeasible";
    case kExitUncertified: return "uncertified";
    default: return "error";
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity and information-energy regions of a SWIPT fading channel"};
  std::string config_path;
  std::vector<std::string> sets;
  int threads = 0;
  std::string out_dir;
  app.add_option("-c,--config", config_path, "JSON config file")->required();
  app.add_option("--set", sets, "override a scalar leaf, e.g. --set solve.dx=0.02");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory (overrides SWIPT_OUTPUT_DIR and output.dir)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "swipt: " << e.what() << "\n";
    return kExitConfig;
  }

  RunConfig cfg;
  try {
    if (const char* env = std::getenv("SWIPT_OUTPUT_DIR"); env != nullptr && *env != '\0') {
      sets.insert(sets.begin(), std::string("output.dir=") + env);
    }
    if (!out_dir.empty()) sets.push_back("output.dir=" + out_dir);
    if (threads > 0) sets.push_back("threads=" + std::to_string(threads));
    cfg = load_config(read_text(config_path), sets);
  } catch (const Error& e) {
    err << "swipt: config error: " << e.what() << "\n";
    return kExitConfig;
  }

  Outcome o;
  try {
    o = dispatch(cfg);
  } catch (const InfeasibleError& e) {
    o.result = {{"error", e.what()}, {"constraint", e.constraint()}};
    o.code = kExitInfeasible;
  } catch (const ConfigError& e) {
    err << "swipt: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "swipt: " << e.what() << "\n";
    return kExitError;
  }

  const fs::path dir(cfg.out_dir);
  json doc = {{"schema_version", kSchemaVersion},
              {"mode", to_string(cfg.mode)},
              {"status", status_of(o.code)},
              {"exit_code", o.code},
              {"config", json::parse(dump_config(cfg))},
              {"result", o.result}};
  try {
    const fs::path doc_path = dir / (cfg.name + ".result.json");
    write_text(doc_path, doc.dump(2) + "\n");
    out << "wrote " << doc_path.string() << "\n";
    for (const auto& [suffix, text] : o.files) {
      const fs::path p = dir / (cfg.name + suffix);
      write_text(p, text);
      out << "wrote " << p.string() << "\n";
    }
  } catch (const IoError& e) {
    err << "swipt: " << e.what() << "\n";
    return kExitError;
  }
  if (o.code == kExitInfeasible) err << "swipt: infeasible: " << o.result["error"].get<std::string>() << "\n";
  if (o.code == kExitUncertified) err << "swipt: optimality certificate failed\n";
  out << "status " << status_of(o.code) << "\n";
  return o.code;
}

}  // namespace swipt
