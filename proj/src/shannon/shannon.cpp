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

#include "swipt/shannon.hpp"

#include <algorithm>
#include <cmath>

#include "../solver/engine.hpp"
#include "swipt/errors.hpp"

namespace swipt {
namespace {

std::vector<double> axis(double peak, double dx) {
  if (peak <= 0.0) return {0.0};
  return build_grid(peak, std::min(dx, peak));
}

engine::Options engine_options(const SolveOptions& o) {
  engine::Options e;
  e.tol = o.tol;
  e.max_iter = o.max_iter;
  e.rule = o.rule;
  return e;
}

ExtendedSolveResult solve_letters(const std::vector<std::vector<double>>& letters,
                                  const ConstraintSet& c, const HpaModel& hpa, const EhModel& eh,
                                  const SolveOptions& opts, std::span<const double> warm) {
  engine::Problem p;
  double max_cost = 0.0, min_energy = INFINITY;
  for (const auto& x : letters) {
    std::vector<info::Component> comps;
    for (std::size_t i = 0; i < x.size(); ++i) {
      comps.push_back({c.states[i].prob, output_scale(x[i], hpa)});
    }
    p.letters.push_back(info::Letter::make(std::move(comps)));
    p.cost.push_back(letter_power(x, c.states));
    p.energy.push_back(letter_energy(x, c.states, hpa, eh));
    max_cost = std::max(max_cost, p.cost.back());
    min_energy = std::min(min_energy, p.energy.back());
  }
  p.power_limit = c.avg_power;
  p.power_on = max_cost > c.avg_power;
  p.energy_req = c.e_req;
  p.energy_on = c.e_req > min_energy;
  const engine::Result r = engine::solve(p, engine_options(opts), warm);

  ExtendedSolveResult out;
  out.grid = letters;
  out.weights = r.q;
  out.distribution.states = c.states;
  double total = 0.0;
  for (std::size_t j = 0; j < letters.size(); ++j) {
    if (r.q[j] > 0.0) {
      out.distribution.points.push_back({letters[j], r.q[j]});
      total += r.q[j];
    }
  }
  for (auto& pt : out.distribution.points) pt.q /= total;
  out.rate = r.rate;
  out.power = r.power;
  out.energy = r.energy;
  out.lambda1 = r.lambda1;
  out.lambda2 = r.lambda2;
  out.gap = r.gap;
  out.iterations = r.iterations;
  return out;
}

bool try_solve(const std::vector<std::vector<double>>& letters, const ConstraintSet& c,
               const HpaModel& hpa, const EhModel& eh, const SolveOptions& opts,
               ExtendedSolveResult& out) {
  try {
    out = solve_letters(letters, c, hpa, eh, opts, {});
    return true;
  } catch (const InfeasibleError&) {
    return false;
  }
}

bool contains(const std::vector<std::vector<double>>& s, const std::vector<double>& x) {
  return std::find(s.begin(), s.end(), x) != s.end();
}

}  // namespace

void require_two_states(const ConstraintSet& constraints) {
  constraints.validate();
  if (constraints.states.size() != 2) {
    throw ContractError("unsupported state cardinality: exactly two peak-power states required");
  }
}

std::vector<std::vector<double>> build_extended_grid(std::span<const PeakState> states, double dx) {
  if (states.size() != 2) {
    throw ContractError("unsupported state cardinality: exactly two peak-power states required");
  }
  if (!(dx > 0.0)) throw ContractError("build_extended_grid: dx must be positive");
  std::vector<std::vector<double>> out;
  for (double x1 : axis(states[0].amplitude, dx)) {
    for (double x2 : axis(states[1].amplitude, dx)) out.push_back({x1, x2});
  }
  return out;
}

ExtendedSolveResult solve_extended(const ConstraintSet& constraints, const HpaModel& hpa,
                                   const EhModel& eh, const SolveOptions& opts,
                                   std::span<const double> warm) {
  require_two_states(constraints);
  hpa.validate();
  eh.validate();
  return solve_letters(build_extended_grid(constraints.states, opts.dx), constraints, hpa, eh,
                       opts, warm);
}

ConstraintSet onoff_constraints(double a2, double p2, const ConstraintSet& constraints) {
  if (!(p2 >= 0.0 && p2 <= 1.0)) throw ContractError("on-off: p2 must lie in [0, 1]");
  if (!(a2 > 0.0)) throw ContractError("on-off: a2 must be positive");
  return {constraints.avg_power, {{0.0, 1.0 - p2}, {a2, p2}}, constraints.e_req};
}

SolveResult solve_onoff(double a2, double p2, const ConstraintSet& constraints,
                        const HpaModel& hpa, const EhModel& eh, const SolveOptions& opts,
                        std::span<const double> warm) {
  const ConstraintSet c = onoff_constraints(a2, p2, constraints);
  c.validate();
  hpa.validate();
  eh.validate();
  auto letters_of = [](const std::vector<double>& g) {
    std::vector<std::vector<double>> letters;
    for (double x : g) letters.push_back({0.0, x});
    return letters;
  };
  std::vector<double> grid = build_grid(a2, std::min(opts.dx, a2));
  ExtendedSolveResult r = solve_letters(letters_of(grid), c, hpa, eh, opts, warm);
  if (grid.size() > 1) {
    const double step = grid[1] - grid[0];
    for (int round = 0; round < opts.refine; ++round) {
      engine::Refinement f = engine::refine_grid(grid, r.weights, step, round, a2);
      r = solve_letters(letters_of(f.points), c, hpa, eh, opts, f.warm);
      grid = std::move(f.points);
    }
  }

  SolveResult out;
  out.grid = grid;
  out.weights = r.weights;
  out.distribution.peak = a2;
  for (const auto& pt : r.distribution.points) out.distribution.points.push_back({pt.x[1], pt.q});
  out.rate = r.rate;
  out.power = r.power;
  out.energy = r.energy;
  out.lambda1 = r.lambda1;
  out.lambda2 = r.lambda2;
  out.gap = r.gap;
  out.iterations = r.iterations;
  return out;
}

ExtendedSolveResult onoff_as_extended(const SolveResult& result, double a2, double p2) {
  ExtendedSolveResult out;
  out.distribution.states = {{0.0, 1.0 - p2}, {a2, p2}};
  for (const auto& pt : result.distribution.points) {
    out.distribution.points.push_back({{0.0, pt.x}, pt.q});
  }
  for (std::size_t j = 0; j < result.grid.size(); ++j) out.grid.push_back({0.0, result.grid[j]});
  out.weights = result.weights;
  out.rate = result.rate;
  out.power = result.power;
  out.energy = result.energy;
  out.lambda1 = result.lambda1;
  out.lambda2 = result.lambda2;
  out.gap = result.gap;
  out.iterations = result.iterations;
  return out;
}

ExtendedSolveResult escalate_support(const ConstraintSet& constraints, const HpaModel& hpa,
                                     const EhModel& eh, const SolveOptions& opts,
                                     const EscalationOptions& esc) {
  require_two_states(constraints);
  if (esc.n_start < 2) throw ContractError("escalate_support: n_start must be at least 2");
  const auto& st = constraints.states;
  const auto grid = build_extended_grid(st, opts.dx);

  std::vector<std::vector<double>> support{{0.0, 0.0}};
  const std::vector<double> top{st[0].amplitude, st[1].amplitude};
  if (!contains(support, top)) support.push_back(top);

  ExtendedSolveResult best;
  if (!try_solve(support, constraints, hpa, eh, opts, best)) {
    // Saturating amplifiers can make interior letters more energy-efficient;
    // seed with the full-grid energy optimum instead.
    const ExtendedSolveResult all = solve_extended(constraints, hpa, eh, opts);
    for (const auto& pt : all.distribution.points) {
      if (!contains(support, pt.x)) support.push_back(pt.x);
    }
    if (!try_solve(support, constraints, hpa, eh, opts, best)) {
      throw InfeasibleError("energy", "escalate_support: no feasible starting support");
    }
  }

  KktOptions coarse = esc.kkt;
  coarse.check_step = opts.dx;
  for (;;) {
    // Local refinement of the letters (the zero letter stays fixed).
    for (double h : {opts.dx, opts.dx / 2.0, opts.dx / 5.0, opts.dx / 10.0}) {
      bool improved = true;
      for (int pass = 0; improved && pass < 50; ++pass) {
        improved = false;
        for (std::size_t i = 1; i < support.size() && !improved; ++i) {
          for (std::size_t m = 0; m < 2 && !improved; ++m) {
            for (double dir : {-1.0, 1.0}) {
              auto trial = support;
              trial[i][m] = std::clamp(trial[i][m] + dir * h, 0.0, st[m].amplitude);
              if (trial[i][m] == support[i][m] || contains(support, trial[i])) continue;
              ExtendedSolveResult cand;
              if (!try_solve(trial, constraints, hpa, eh, opts, cand)) continue;
              if (cand.rate > best.rate + 1e-12) {
                best = std::move(cand);
                support = std::move(trial);
                improved = true;
                break;
              }
            }
          }
        }
      }
    }

    KktReport rep = kkt_check_extended(best, constraints, hpa, eh, coarse);
    if (rep.verdict && static_cast<int>(support.size()) >= esc.n_start) {
      rep = kkt_check_extended(best, constraints, hpa, eh, esc.kkt);
      if (rep.verdict) break;
    }
    if (support.size() >= grid.size()) {
      throw EscalationError("escalate_support: product grid exhausted without certification",
                            best.rate, support.size());
    }
    const KktPoint* worst = nullptr;
    for (const auto& row : rep.table) {
      if (row.support || contains(support, row.x)) continue;
      if (worst == nullptr || row.g < worst->g) worst = &row;
    }
    if (worst == nullptr) {
      throw EscalationError("escalate_support: no candidate letter left", best.rate, support.size());
    }
    support.push_back(worst->x);
    ExtendedSolveResult cand;
    if (try_solve(support, constraints, hpa, eh, opts, cand)) best = std::move(cand);
  }

  // Drop letters that ended with negligible weight.
  ExtendedSolveResult out = best;
  out.distribution.points.clear();
  double total = 0.0;
  for (const auto& pt : best.distribution.points) {
    if (pt.q >= opts.prune_threshold) {
      out.distribution.points.push_back(pt);
      total += pt.q;
    }
  }
  for (auto& pt : out.distribution.points) pt.q /= total;
  return out;
}

}  // namespace swipt
