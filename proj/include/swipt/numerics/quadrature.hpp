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

#include <functional>
#include <vector>

namespace swipt::numerics {

enum class QuadratureScheme {
  /// Composite 16-point Gauss-Legendre on geometrically graded panels over
  /// [0, y_max]. Node positions depend only on (node budget, scale).
  kGradedFixed,
  /// Globally adaptive Gauss-Kronrod (7/15) subdivision over [0, y_max].
  kAdaptive,
};

/// Half-line quadrature configuration.
///
/// Integrands are assumed to decay at least like exp(-y / scale); the
/// half-line is truncated at y_max = 40 * scale, where exp(-40) ~ 4e-18.
struct QuadratureRule {
  QuadratureScheme scheme = QuadratureScheme::kGradedFixed;
  int nodes = 256;         ///< node budget, >= 16
  double rel_tol = 1e-10;  ///< in (0, 1e-4]
  double abs_tol = 1e-14;  ///< absolute floor, >= 0; covers integrals near zero
  double scale = 1.0;      ///< slowest exponential decay scale, >= 1

  static constexpr int kPanelOrder = 16;
  static constexpr double kTruncation = 40.0;

  /// Throws ContractError when a field violates its invariant.
  void validate() const;

  double y_max() const { return kTruncation * scale; }
  QuadratureRule with_scale(double s) const;
  QuadratureRule with_nodes(int n) const;
};

/// Nodes and weights of the fixed graded rule.
struct NodeSet {
  std::vector<double> y;
  std::vector<double> w;
  double y_max = 0.0;

  std::size_t size() const { return y.size(); }
};

/// Builds the node set of the graded fixed rule (scheme field is ignored).
NodeSet make_nodes(const QuadratureRule& rule);

/// Panel edges used by the graded rule: first panel of width <= 1, widths
/// growing geometrically so that the last edge lands on y_max.
std::vector<double> graded_edges(double y_max, int panels);

/// Integrates f over [0, inf).
///
/// For kGradedFixed the result at the given budget is compared with the
/// doubled budget; if they disagree by more than rel_tol (relative to the
/// integral of |f|) the adaptive scheme takes over with an evaluation
/// budget of 8x the node budget. Throws AccuracyError carrying the best
/// estimate and residual when the tolerance cannot be met.
double integrate_halfline(const std::function<double(double)>& f,
                          const QuadratureRule& rule);

}  // namespace swipt::numerics
