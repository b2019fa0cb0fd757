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

// Optimality certificates: the pointwise Lagrangian conditions for static
// and extended solutions, the low-peak binary law and the transition
// amplitude where that law stops being optimal.

#include <vector>

#include "swipt/channel.hpp"
#include "swipt/infometrics.hpp"
#include "swipt/numerics/quadrature.hpp"
#include "swipt/solver.hpp"

namespace swipt {

struct KktPoint {
  std::vector<double> x;  ///< one coordinate per state
  double g = 0.0;
  bool support = false;
};

/// g(x) = lambda1 (a(x) - P) - lambda2 (e(x) - E_req) + C - i(x; F).
/// Optimality holds iff g >= 0 everywhere with equality on the support.
struct KktReport {
  double max_violation = 0.0;          ///< max(0, -min g) over the check grid
  double max_support_residual = 0.0;   ///< max |g| over support points
  double c = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double tol = 0.0;
  bool verdict = false;
  std::vector<KktPoint> table;
};

struct KktOptions {
  double check_step = 0.005;
  double tol = 1e-4;
  /// Support points are weights above this; lighter points are checked as
  /// inequality points only.
  double support_threshold = 1e-9;
  /// Check only the support points: certifies the weights for fixed
  /// locations (used for cardinality-limited laws).
  bool support_only = false;
  /// Quadrature for the certificate. The node budget defaults to four times
  /// the solver default so the check does not reuse the solver's nodes.
  numerics::QuadratureRule rule = numerics::QuadratureRule{}.with_nodes(1024);
};

KktReport kkt_check(const SolveResult& result, const ConstraintSet& constraints,
                    const HpaModel& hpa, const EhModel& eh, const KktOptions& opts = {});

/// Same conditions over the product grid of the state peaks.
KktReport kkt_check_extended(const ExtendedSolveResult& result, const ConstraintSet& constraints,
                             const HpaModel& hpa, const EhModel& eh, const KktOptions& opts = {});

/// Wraps an arbitrary law as a result (rate, power, energy filled in, zero
/// multipliers) so it can be certified; kkt_check refits the multipliers.
SolveResult as_result(const MassPointDistribution& dist, const HpaModel& hpa, const EhModel& eh,
                      const numerics::QuadratureRule& rule = {});
ExtendedSolveResult as_result(const ExtendedDistribution& dist, const HpaModel& hpa,
                              const EhModel& eh, const numerics::QuadratureRule& rule = {});

/// Residuals of the same conditions written in the variable s = 1/(1 + d(x)^2),
/// where the output law is s exp(-s y). Evaluated at the given s values with
/// the multipliers of `report`.
std::vector<double> kkt_residuals_s(const std::vector<double>& s, const MassPointDistribution& dist,
                                    const ConstraintSet& constraints, const HpaModel& hpa,
                                    const EhModel& eh, const KktReport& report,
                                    const numerics::QuadratureRule& rule = {});

/// Two-point law {(0, 1 - q), (A, q)} with q = min(P / A^2, q*), where q* is
/// the unconstrained maximizer of I over q (golden-section search).
MassPointDistribution low_pp_binary(double avg_power, double peak, const HpaModel& hpa,
                                    const EhModel& eh);

struct TransitionOptions {
  double tol = 1e-3;      ///< bracket width
  double kkt_tol = 1e-7;  ///< certificate tolerance of the binary law
  double e_req = 1.0;
};

/// Bisection on the peak amplitude for the point where low_pp_binary stops
/// passing kkt_check. Throws SearchError unless the binary law passes at lo
/// and fails at hi.
double find_transition(double avg_power, const HpaModel& hpa, const EhModel& eh, double lo,
                       double hi, const TransitionOptions& opts = {});

}  // namespace swipt
