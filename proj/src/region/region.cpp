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

#include "swipt/region.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "swipt/errors.hpp"
#include "swipt/shannon.hpp"

namespace swipt {
namespace {

double peak_of(const CurveConfig& c) { return c.constraints.max_peak(); }

double onoff_p2(const CurveConfig& c) { return c.constraints.states.back().prob; }

struct PointJob {
  double e_req;
  std::vector<double> warm;
  std::vector<double> seed;
};

// Weights from a (possibly refined) grid moved to the nearest point of
// `base`.
std::vector<double> project(const std::vector<double>& grid, const std::vector<double>& w,
                            const std::vector<double>& base) {
  if (grid == base) return w;
  std::vector<double> out(base.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    auto it = std::lower_bound(base.begin(), base.end(), grid[j]);
    if (it == base.end() || (it != base.begin() && grid[j] - *(it - 1) < *it - grid[j])) --it;
    out[static_cast<std::size_t>(it - base.begin())] += w[j];
  }
  return out;
}

struct PointOutcome {
  CapacityPoint point;
  std::vector<double> weights;
};

PointOutcome solve_once(const CurveConfig& cfg, const PointJob& job, const RegionOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolveOptions so = opts.solve;
  so.dx = cfg.dx;
  so.tol = cfg.tol;
  KktOptions ko = opts.kkt;
  if (!(ko.check_step > 0.0)) ko.check_step = cfg.dx / 10.0;
  ConstraintSet c = cfg.constraints;
  c.e_req = job.e_req;

  PointOutcome out;
  SolveResult r;
  KktReport rep;
  switch (cfg.kind) {
    case CurveKind::kStatic: {
      const auto grid = build_grid(peak_of(cfg), cfg.dx);
      r = solve_weights(grid, c, cfg.hpa, cfg.eh, so, job.warm);
      if (opts.certify) rep = kkt_check(r, c, cfg.hpa, cfg.eh, ko);
      out.weights = project(r.grid, r.weights, grid);
      break;
    }
    case CurveKind::kAsk: {
      const auto grid = build_grid(peak_of(cfg), cfg.dx);
      r = solve_ask(grid, c, cfg.hpa, cfg.eh, cfg.n_max, so, job.seed);
      ko.support_only = true;
      if (opts.certify) rep = kkt_check(r, c, cfg.hpa, cfg.eh, ko);
      break;
    }
    case CurveKind::kOnOff: {
      const double a2 = peak_of(cfg);
      const double p2 = onoff_p2(cfg);
      r = solve_onoff(a2, p2, c, cfg.hpa, cfg.eh, so, job.warm);
      out.weights = project(r.grid, r.weights, build_grid(a2, std::min(cfg.dx, a2)));
      if (opts.certify) {
        rep = kkt_check_extended(onoff_as_extended(r, a2, p2), c, cfg.hpa, cfg.eh, ko);
      }
      break;
    }
  }
  auto& p = out.point;
  p.e_req = job.e_req;
  p.rate_nats = r.rate;
  p.rate_bits = nats_to_bits(r.rate);
  p.energy = r.energy;
  p.power = r.power;
  p.distribution = r.distribution;
  p.lambda1 = r.lambda1;
  p.lambda2 = r.lambda2;
  p.kkt_ok = opts.certify && rep.verdict;
  p.kkt_residual = opts.certify ? std::max(rep.max_violation, rep.max_support_residual) : 0.0;
  p.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.weights.empty()) out.weights = r.weights;
  return out;
}

// Near E_max the feasible set is thin enough that a warm start can stop
// with stray weight on non-optimal letters; such points are re-solved cold.
PointOutcome solve_point(const CurveConfig& cfg, const PointJob& job, const RegionOptions& opts) {
  PointOutcome out = solve_once(cfg, job, opts);
  if (!opts.certify || out.point.kkt_ok || job.warm.empty()) return out;
  PointOutcome cold = solve_once(cfg, {job.e_req, {}, job.seed}, opts);
  if (cold.point.kkt_ok || cold.point.kkt_residual < out.point.kkt_residual) {
    cold.point.wall_seconds += out.point.wall_seconds;
    return cold;
  }
  return out;
}

void check_config(const CurveConfig& cfg) {
  cfg.constraints.validate();
  cfg.hpa.validate();
  cfg.eh.validate();
  if (cfg.kind == CurveKind::kOnOff) {
    if (cfg.constraints.states.size() != 2 || cfg.constraints.states[0].amplitude != 0.0) {
      throw ContractError("on-off curve needs the state set {(0, 1 - p2), (a2, p2)}");
    }
  } else if (!cfg.constraints.is_static()) {
    throw ContractError("static curve needs a single peak-power state");
  }
  if (cfg.kind == CurveKind::kAsk && cfg.n_max < 2) {
    throw ContractError("ASK curve needs an alphabet size of at least 2");
  }
  SolveOptions so;
  so.dx = cfg.dx;
  so.tol = cfg.tol;
  so.validate(peak_of(cfg));
}

std::vector<PointOutcome> run_levels(const CurveConfig& cfg, const std::vector<double>& levels,
                                     const std::vector<std::vector<double>>& seeds,
                                     const RegionOptions& opts) {
  check_config(cfg);
  std::vector<PointOutcome> out(levels.size());
  auto seed_of = [&](std::size_t i) {
    return i < seeds.size() ? seeds[i] : std::vector<double>{};
  };
  if (opts.parallel && levels.size() > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(levels.size());
    auto worker = [&] {
      for (std::size_t i = next++; i < levels.size(); i = next++) {
        try {
          out[i] = solve_point(cfg, {levels[i], {}, seed_of(i)}, opts);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const int n = std::clamp(opts.threads, 1, static_cast<int>(levels.size()));
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    return out;
  }
  std::vector<double> warm;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out[i] = solve_point(cfg, {levels[i], warm, seed_of(i)}, opts);
    if (cfg.kind != CurveKind::kAsk) warm = out[i].weights;
  }
  return out;
}

RegionCurve to_curve(const CurveConfig& cfg, std::vector<PointOutcome> outcomes) {
  RegionCurve curve{cfg, {}};
  for (auto& o : outcomes) curve.points.push_back(std::move(o.point));
  return curve;
}


CurveConfig static_config(const ConstraintSet& c, const HpaModel& hpa, const EhModel& eh,
                          const RegionOptions& opts) {
  return {CurveKind::kStatic, c, hpa, eh, opts.solve.dx, opts.solve.tol, 0};
}

}  // namespace

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kStatic: return "static";
    case CurveKind::kAsk: return "ask";
    case CurveKind::kOnOff: return "onoff";
  }
  return "static";
}

CurveKind parse_curve_kind(const std::string& name) {
  if (name == "static") return CurveKind::kStatic;
  if (name == "ask") return CurveKind::kAsk;
  if (name == "onoff") return CurveKind::kOnOff;
  throw ContractError("unknown curve kind '" + name + "'");
}

double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

EnergyBounds energy_bounds(const ConstraintSet& constraints, const HpaModel& hpa,
                           const EhModel& eh, double dx) {
  constraints.validate();
  if (!constraints.is_static()) throw ContractError("energy_bounds: static constraint set required");
  const double peak = constraints.max_peak();
  if (peak <= 0.0) return {1.0, 1.0};
  const auto grid = build_grid(peak, std::min(dx, peak));
  ConstraintSet c = constraints;
  c.e_req = 1.0;
  return {1.0, std::max(1.0, max_energy_on_grid(grid, c, hpa, eh))};
}

std::vector<double> sweep_levels(const EnergyBounds& bounds, int n_points) {
  if (n_points < 2) throw ContractError("sweep_levels: need at least two points");
  const double span = bounds.max - bounds.floor;
  if (!(span > 0.0)) return {bounds.floor};
  const double top = bounds.max - 1e-6 * span;
  std::vector<double> levels;
  for (int i = 0; i < n_points; ++i) {
    levels.push_back(bounds.floor + (top - bounds.floor) * i / (n_points - 1));
  }
  return levels;
}

RegionCurve trace_levels(const CurveConfig& config, const std::vector<double>& e_reqs,
                         const RegionOptions& opts) {
  if (e_reqs.empty()) throw ContractError("trace_levels: no energy levels");
  return to_curve(config, run_levels(config, e_reqs, {}, opts));
}

EnergyBounds curve_bounds(const CurveConfig& cfg) {
  if (cfg.kind != CurveKind::kOnOff) return energy_bounds(cfg.constraints, cfg.hpa, cfg.eh, cfg.dx);
  const double a2 = peak_of(cfg);
  const double p2 = onoff_p2(cfg);
  if (p2 <= 0.0) return {1.0, 1.0};
  // The on-state law sees the power limit P / p2 and contributes p2 of its
  // energy; the off state adds 1 - p2.
  ConstraintSet on = ConstraintSet::static_peak(a2, cfg.constraints.avg_power / p2);
  const EnergyBounds b = energy_bounds(on, cfg.hpa, cfg.eh, cfg.dx);
  return {1.0, (1.0 - p2) + p2 * b.max};
}

RegionCurve trace_curve(const CurveConfig& config, const RegionOptions& opts) {
  check_config(config);
  return trace_levels(config, sweep_levels(curve_bounds(config), opts.n_points), opts);
}

RegionCurve trace_region(const ConstraintSet& constraints, const HpaModel& hpa, const EhModel& eh,
                         const RegionOptions& opts) {
  const CurveConfig cfg = static_config(constraints, hpa, eh, opts);
  check_config(cfg);
  return trace_levels(cfg, sweep_levels(curve_bounds(cfg), opts.n_points), opts);
}

HpaComparison compare_hpa(const ConstraintSet& constraints, const HpaModel& hpa_on,
                          const EhModel& eh, const RegionOptions& opts) {
  const CurveConfig on = static_config(constraints, hpa_on, eh, opts);
  const CurveConfig off = static_config(constraints, HpaModel::linear(), eh, opts);
  check_config(on);
  const EnergyBounds b_on = curve_bounds(on);
  const EnergyBounds b_off = curve_bounds(off);
  const auto levels = sweep_levels({1.0, std::min(b_on.max, b_off.max)}, opts.n_points);
  return {trace_levels(on, levels, opts), trace_levels(off, levels, opts)};
}

AskSweep sweep_ask(const ConstraintSet& constraints, const HpaModel& hpa, const EhModel& eh,
                   const std::vector<int>& sizes, const RegionOptions& opts) {
  AskSweep out;
  out.unconstrained = trace_region(constraints, hpa, eh, opts);
  std::vector<double> levels;
  for (const auto& p : out.unconstrained.points) levels.push_back(p.e_req);
  std::vector<std::vector<double>> seeds;
  int prev_size = 0;
  for (int n : sizes) {
    if (n < 2) throw ContractError("sweep_ask: alphabet sizes must be at least 2");
    CurveConfig cfg = static_config(constraints, hpa, eh, opts);
    cfg.kind = CurveKind::kAsk;
    cfg.n_max = n;
    // Seeds only make sense when the alphabet grows.
    if (n < prev_size) seeds.clear();
    RegionCurve curve = to_curve(cfg, run_levels(cfg, levels, seeds, opts));
    seeds.clear();
    for (const auto& p : curve.points) seeds.push_back(p.distribution.locations());
    double gap = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      gap = std::max(gap, out.unconstrained.points[i].rate_nats - curve.points[i].rate_nats);
    }
    out.max_gap.push_back(gap);
    out.curves.push_back(std::move(curve));
    prev_size = n;
  }
  return out;
}

std::vector<RegionCurve> sweep_onoff(double a2, const std::vector<double>& p2s,
                                     const ConstraintSet& constraints, const HpaModel& hpa,
                                     const EhModel& eh, const RegionOptions& opts) {
  std::vector<CurveConfig> cfgs;
  double e_max = INFINITY;
  for (double p2 : p2s) {
    if (!(p2 > 0.0 && p2 <= 1.0)) throw ContractError("sweep_onoff: p2 must lie in (0, 1]");
    CurveConfig cfg = static_config(onoff_constraints(a2, p2, constraints), hpa, eh, opts);
    cfg.kind = CurveKind::kOnOff;
    e_max = std::min(e_max, curve_bounds(cfg).max);
    cfgs.push_back(cfg);
  }
  const auto levels = sweep_levels({1.0, e_max}, opts.n_points);
  std::vector<RegionCurve> out;
  for (const auto& cfg : cfgs) out.push_back(trace_levels(cfg, levels, opts));
  return out;
}

}  // namespace swipt
