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

// Time-varying peak power known causally at the transmitter. The input is a
// letter (x_1, ..., x_M) of per-state symbols; the receiver sees the state
// mixture sum_i p_i p(y | x_i). Only two-state alphabets are supported.

#include <span>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/infometrics.hpp"
#include "swipt/solver.hpp"
#include "swipt/verify.hpp"

namespace swipt {

/// Throws ContractError unless the constraint set has exactly two states.
void require_two_states(const ConstraintSet& constraints);

/// Product of the per-state grids; a zero peak contributes the single point 0.
std::vector<std::vector<double>> build_extended_grid(std::span<const PeakState> states, double dx);

/// Maximizes the mixture information over weights on the product grid
/// under sum_i p_i E[X_i^2] <= P and sum_i p_i E[harvested_energy(X_i)] >= E_req.
ExtendedSolveResult solve_extended(const ConstraintSet& constraints, const HpaModel& hpa,
                                   const EhModel& eh, const SolveOptions& opts,
                                   std::span<const double> warm = {});

/// On-off arrivals: peak a2 with probability p2, silence otherwise. The
/// result law is over the on-state symbol x2 in [0, a2]. Power and energy
/// are state-averaged (the off state contributes energy 1 and power 0).
/// Only avg_power and e_req are read from `constraints`.
SolveResult solve_onoff(double a2, double p2, const ConstraintSet& constraints,
                        const HpaModel& hpa, const EhModel& eh, const SolveOptions& opts,
                        std::span<const double> warm = {});

/// The on-off state set {(0, 1 - p2), (a2, p2)} with the constraint values
/// of `constraints`.
ConstraintSet onoff_constraints(double a2, double p2, const ConstraintSet& constraints);

/// On-off result expressed over the extended alphabet (letters (0, x2)).
ExtendedSolveResult onoff_as_extended(const SolveResult& result, double a2, double p2);

struct EscalationOptions {
  int n_start = 2;
  KktOptions kkt{};  ///< certification tolerance and check grid
};

/// Fixed-cardinality search: start from {(0,0), (a1,a2)}, optimize weights
/// and locations, and add the most violating grid letter until the result
/// passes kkt_check_extended. Throws EscalationError when the product grid
/// is exhausted.
ExtendedSolveResult escalate_support(const ConstraintSet& constraints, const HpaModel& hpa,
                                     const EhModel& eh, const SolveOptions& opts,
                                     const EscalationOptions& esc = {});

}  // namespace swipt
