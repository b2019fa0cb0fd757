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

#pragma once

// Capacity-achieving weights on a fixed amplitude grid under simplex,
// average-power and harvested-energy constraints.

#include <span>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/infometrics.hpp"
#include "swipt/numerics/quadrature.hpp"

namespace swipt {

struct SolveOptions {
  double dx = 0.05;               ///< grid step
  double tol = 1e-8;              ///< duality-gap target (nats)
  int max_iter = 300;
  double prune_threshold = 1e-7;
  double merge_radius = MassPointDistribution::kDefaultMergeRadius;
  /// Rounds of local refinement: each adds points at spacing dx / 10
  /// within one grid step of every support point and re-solves.
  int refine = 0;
  numerics::QuadratureRule rule{};

  /// Throws ContractError unless 0 < dx <= peak / 10 and tol > 0.
  void validate(double peak) const;
};

struct SolveResult {
  MassPointDistribution distribution;  ///< letters with positive weight
  double rate = 0.0;                   ///< nats
  double energy = 0.0;
  double power = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool prune_warning = false;
  std::vector<double> grid;     ///< locations the weights refer to
  std::vector<double> weights;  ///< full weight vector on grid
};

/// Solution over the extended (per-state) alphabet.
struct ExtendedSolveResult {
  ExtendedDistribution distribution;
  double rate = 0.0;
  double energy = 0.0;
  double power = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  int iterations = 0;
  std::vector<std::vector<double>> grid;  ///< letters the weights refer to
  std::vector<double> weights;
};

/// {0, dx, 2dx, ...} with the peak appended when not hit exactly.
std::vector<double> build_grid(double peak, double dx);

/// Maximizes I over weights on `grid` (ascending, starting at 0). `warm`
/// optionally gives starting weights on the same grid.
SolveResult solve_weights(std::span<const double> grid, const ConstraintSet& constraints,
                          const HpaModel& hpa, const EhModel& eh, const SolveOptions& opts,
                          std::span<const double> warm = {});

/// Drops weights below the threshold, merges neighbours within the merge
/// radius and renormalizes. If the pruned law violates a constraint the
/// input comes back unchanged with prune_warning set.
SolveResult prune_support(const SolveResult& result, const ConstraintSet& constraints,
                          const HpaModel& hpa, const EhModel& eh, const SolveOptions& opts);

/// Best law found with at most n_max mass points. `seed` holds locations to
/// keep in the starting support (for nested sweeps over n_max).
SolveResult solve_ask(std::span<const double> grid, const ConstraintSet& constraints,
                      const HpaModel& hpa, const EhModel& eh, int n_max,
                      const SolveOptions& opts, std::span<const double> seed = {});

/// Largest E[harvested energy] over laws on `grid` meeting the power limit.
double max_energy_on_grid(std::span<const double> grid, const ConstraintSet& constraints,
                          const HpaModel& hpa, const EhModel& eh);

}  // namespace swipt
