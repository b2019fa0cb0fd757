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

// Conditional-gradient engine shared by the static, on-off and extended
// solvers: maximizes I(q) over letter weights subject to
//   q >= 0, sum q = 1, cost . q <= power_limit, energy . q >= energy_req.
//
// Each outer iteration solves the linear subproblem over the full letter
// list (its value gives the duality gap) and then re-optimizes exactly on the
// working support with an active-set Newton method.

#include <optional>
#include <span>
#include <vector>

#include "../infometrics/evaluator.hpp"

namespace swipt::engine {

struct Problem {
  std::vector<info::Letter> letters;
  std::vector<double> cost;
  std::vector<double> energy;
  double power_limit = 0.0;
  bool power_on = true;
  double energy_req = 1.0;
  bool energy_on = true;
};

struct Options {
  double tol = 1e-6;
  int max_iter = 300;
  numerics::QuadratureRule rule{};
};

struct Result {
  std::vector<double> q;  ///< one weight per input letter (duplicates get 0)
  double rate = 0.0;
  double power = 0.0;
  double energy = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double offset = 0.0;  ///< mu with i_j = mu + lambda1 a_j - lambda2 e_j on support
  double gap = 0.0;
  int iterations = 0;
  std::vector<double> info;  ///< information density of every letter
};

/// Largest achievable energy . q over the constraint polytope (power row
/// only); the result is the LP value.
double max_energy(const Problem& p);

/// Throws InfeasibleError("energy", ...) when no weight vector meets the
/// constraints, AccuracyError when the gap target is not met in max_iter.
Result solve(const Problem& p, const Options& opts, std::span<const double> warm = {});

struct Refinement {
  std::vector<double> points;
  std::vector<double> warm;  ///< weights of `q` moved onto `points`
};

/// One local refinement round on a sorted 1-D grid: adds points at spacing
/// step / 10 / (round + 1) within one grid step of every weighted point in
/// (0, peak) and carries the weights over.
Refinement refine_grid(std::span<const double> grid, std::span<const double> q, double step,
                       int round, double peak);

}  // namespace swipt::engine
