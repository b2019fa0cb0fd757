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

#include "swipt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "engine.hpp"
#include "swipt/errors.hpp"

namespace swipt {
namespace {

void check_grid(std::span<const double> grid, double peak) {
  if (grid.empty()) throw ContractError("grid is empty");
  if (grid.front() != 0.0) throw ContractError("grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ContractError("grid must be strictly increasing");
  }
  if (grid.back() > peak * (1.0 + 1e-12)) throw ContractError("grid exceeds the peak amplitude");
}

engine::Problem static_problem(std::span<const double> grid, const ConstraintSet& c,
                               const HpaModel& hpa, const EhModel& eh) {
  engine::Problem p;
  double max_cost = 0.0, min_energy = INFINITY;
  for (double x : grid) {
    p.letters.push_back(info::Letter::single(output_scale(x, hpa)));
    p.cost.push_back(x * x);
    p.energy.push_back(harvested_energy(x, hpa, eh));
    max_cost = std::max(max_cost, x * x);
    min_energy = std::min(min_energy, p.energy.back());
  }
  p.power_limit = c.avg_power;
  p.power_on = max_cost > c.avg_power;
  p.energy_req = c.e_req;
  p.energy_on = c.e_req > min_energy;
  return p;
}

engine::Options engine_options(const SolveOptions& o) {
  engine::Options e;
  e.tol = o.tol;
  e.max_iter = o.max_iter;
  e.rule = o.rule;
  return e;
}

SolveResult assemble(std::span<const double> grid, double peak, const engine::Result& r) {
  SolveResult out;
  out.grid.assign(grid.begin(), grid.end());
  out.weights = r.q;
  std::vector<MassPoint> pts;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (r.q[j] > 0.0) pts.push_back({grid[j], r.q[j]});
  }
  double total = 0.0;
  for (const auto& p : pts) total += p.q;
  for (auto& p : pts) p.q /= total;
  out.distribution = {std::move(pts), peak};
  out.rate = r.rate;
  out.energy = r.energy;
  out.power = r.power;
  out.lambda1 = r.lambda1;
  out.lambda2 = r.lambda2;
  out.gap = r.gap;
  out.iterations = r.iterations;
  return out;
}

}  // namespace

void SolveOptions::validate(double peak) const {
  if (!(dx > 0.0) || dx > peak / 10.0 * (1.0 + 1e-12)) {
    throw ContractError("SolveOptions: grid step must lie in (0, peak / 10]");
  }
  if (!(tol > 0.0)) throw ContractError("SolveOptions: tolerance must be positive");
  if (max_iter < 1) throw ContractError("SolveOptions: max_iter must be positive");
  if (refine < 0) throw ContractError("SolveOptions: refine must be >= 0");
  if (!(prune_threshold >= 0.0) || !(merge_radius >= 0.0)) {
    throw ContractError("SolveOptions: pruning threshold and merge radius must be >= 0");
  }
  rule.validate();
}

std::vector<double> build_grid(double peak, double dx) {
  if (!(peak > 0.0) || !(dx > 0.0) || dx > peak) {
    throw ContractError("build_grid: need peak > 0 and 0 < dx <= peak");
  }
  std::vector<double> grid;
  // Index-based construction avoids accumulated rounding; points within
  // 1e-9 dx of the peak snap to it.
  const auto n = static_cast<long>(std::floor(peak / dx + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(std::min(peak, static_cast<double>(i) * dx));
  if (peak - grid.back() > 1e-9 * dx) {
    grid.push_back(peak);
  } else {
    grid.back() = peak;
  }
  return grid;
}

namespace engine {

Refinement refine_grid(std::span<const double> grid, std::span<const double> q, double step,
                       int round, double peak) {
  std::set<double> pts(grid.begin(), grid.end());
  const double h = step / 10.0 / (round + 1);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(q[j] > 0.0)) continue;
    for (int k = -10 * (round + 1); k <= 10 * (round + 1); ++k) {
      const double x = grid[j] + k * h;
      if (x > 0.0 && x < peak) pts.insert(x);
    }
  }
  std::vector<double> next(pts.begin(), pts.end());
  // Drop points closer than h / 100 to a neighbour to keep the letters
  // distinct.
  Refinement out;
  out.points.push_back(next.front());
  for (std::size_t i = 1; i < next.size(); ++i) {
    if (next[i] - out.points.back() > h / 100.0 || next[i] == peak) {
      if (next[i] == peak && next[i] - out.points.back() <= h / 100.0) out.points.back() = peak;
      else out.points.push_back(next[i]);
    }
  }
  out.warm.assign(out.points.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(q[j] > 0.0)) continue;
    const auto it = std::lower_bound(out.points.begin(), out.points.end(), grid[j] - h / 100.0);
    out.warm[static_cast<std::size_t>(it - out.points.begin())] += q[j];
  }
  return out;
}

}  // namespace engine

SolveResult solve_weights(std::span<const double> grid, const ConstraintSet& constraints,
                          const HpaModel& hpa, const EhModel& eh, const SolveOptions& opts,
                          std::span<const double> warm) {
  constraints.validate();
  hpa.validate();
  eh.validate();
  if (!constraints.is_static()) throw ContractError("solve_weights: static constraint set required");
  check_grid(grid, constraints.max_peak());
  const double peak = constraints.max_peak();
  engine::Result r = engine::solve(static_problem(grid, constraints, hpa, eh),
                                   engine_options(opts), warm);
  std::vector<double> cur(grid.begin(), grid.end());
  if (opts.refine > 0 && cur.size() > 1) {
    const double step = cur[1] - cur[0];
    for (int round = 0; round < opts.refine; ++round) {
      engine::Refinement f = engine::refine_grid(cur, r.q, step, round, peak);
      r = engine::solve(static_problem(f.points, constraints, hpa, eh), engine_options(opts), f.warm);
      cur = std::move(f.points);
    }
  }
  return assemble(cur, peak, r);
}

SolveResult prune_support(const SolveResult& result, const ConstraintSet& constraints,
                          const HpaModel& hpa, const EhModel& eh, const SolveOptions& opts) {
  std::vector<MassPoint> kept;
  for (const auto& p : result.distribution.points) {
    if (p.q >= opts.prune_threshold) kept.push_back(p);
  }
  SolveResult out = result;
  if (kept.empty()) {
    out.prune_warning = true;
    return out;
  }
  MassPointDistribution d =
      MassPointDistribution::canonical(std::move(kept), result.distribution.peak, opts.merge_radius);
  double total = 0.0;
  for (const auto& p : d.points) total += p.q;
  for (auto& p : d.points) p.q /= total;
  const double power = average_power(d);
  const double energy = average_energy(d, hpa, eh);
  const bool power_ok = power <= constraints.avg_power + 1e-8 ||
                        d.points.back().x * d.points.back().x <= constraints.avg_power;
  const bool energy_ok = energy >= constraints.e_req - 1e-8;
  if (!power_ok || !energy_ok) {
    out.prune_warning = true;
    return out;
  }
  if (d.size() == result.distribution.size()) {
    bool same = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
      same = same && d.points[i].x == result.distribution.points[i].x &&
             d.points[i].q == result.distribution.points[i].q;
    }
    if (same) return out;
  }
  out.distribution = std::move(d);
  out.power = power;
  out.energy = energy;
  out.rate = mutual_information(out.distribution, hpa, opts.rule);
  return out;
}

double max_energy_on_grid(std::span<const double> grid, const ConstraintSet& constraints,
                          const HpaModel& hpa, const EhModel& eh) {
  constraints.validate();
  check_grid(grid, constraints.max_peak());
  return engine::max_energy(static_problem(grid, constraints, hpa, eh));
}

namespace {

// Weights re-optimized on a fixed set of locations; the locations need not
// lie on the grid.
bool solve_on(const std::vector<double>& locs, const ConstraintSet& c, const HpaModel& hpa,
              const EhModel& eh, const SolveOptions& opts, SolveResult& out) {
  try {
    out = solve_weights(locs, c, hpa, eh, opts);
    return true;
  } catch (const InfeasibleError&) {
    return false;
  }
}

}  // namespace

SolveResult solve_ask(std::span<const double> grid, const ConstraintSet& constraints,
                      const HpaModel& hpa, const EhModel& eh, int n_max,
                      const SolveOptions& ask_opts, std::span<const double> seed) {
  if (n_max < 2) throw ContractError("solve_ask: n_max must be at least 2");
  SolveOptions opts = ask_opts;
  opts.refine = 0;
  const SolveResult full = solve_weights(grid, constraints, hpa, eh, opts);
  const auto cap = static_cast<std::size_t>(n_max);
  if (full.distribution.size() <= cap && seed.empty()) return full;

  const double peak = constraints.max_peak();
  std::set<double> start(seed.begin(), seed.end());
  start.insert(0.0);
  std::vector<MassPoint> by_weight = full.distribution.points;
  std::stable_sort(by_weight.begin(), by_weight.end(),
                   [](const MassPoint& a, const MassPoint& b) { return a.q > b.q; });
  for (const auto& p : by_weight) {
    if (start.size() >= cap) break;
    start.insert(p.x);
  }
  if (start.size() > cap) throw ContractError("solve_ask: seed support exceeds n_max");

  std::vector<double> locs(start.begin(), start.end());
  SolveResult best;
  if (!solve_on(locs, constraints, hpa, eh, opts, best)) {
    // The heaviest points cannot meet the energy floor: fall back to the
    // energy-extreme support (zero and the peak) plus the heaviest points.
    std::set<double> alt(seed.begin(), seed.end());
    alt.insert(0.0);
    alt.insert(peak);
    for (const auto& p : by_weight) {
      if (alt.size() >= cap) break;
      alt.insert(p.x);
    }
    locs.assign(alt.begin(), alt.end());
    if (!solve_on(locs, constraints, hpa, eh, opts, best)) {
      throw InfeasibleError("energy", "solve_ask: no support of the allowed size meets the energy floor");
    }
  }

  const double dx = full.grid.size() > 1 ? full.grid[1] - full.grid[0] : opts.dx;
  for (double h : {dx, dx / 2.0, dx / 5.0, dx / 10.0}) {
    bool improved = true;
    for (int pass = 0; improved && pass < 50; ++pass) {
      improved = false;
      for (std::size_t i = 0; i < locs.size(); ++i) {
        for (double dir : {-1.0, 1.0}) {
          const double x = std::clamp(locs[i] + dir * h, 0.0, peak);
          if (x == locs[i]) continue;
          std::vector<double> trial = locs;
          trial[i] = x;
          std::sort(trial.begin(), trial.end());
          if (std::adjacent_find(trial.begin(), trial.end(), [&](double a, double b) {
                return b - a <= opts.merge_radius;
              }) != trial.end()) {
            continue;
          }
          if (trial.front() != 0.0) continue;
          SolveResult cand;
          if (!solve_on(trial, constraints, hpa, eh, opts, cand)) continue;
          if (cand.rate > best.rate + 1e-12) {
            best = std::move(cand);
            locs = std::move(trial);
            improved = true;
            break;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace swipt
