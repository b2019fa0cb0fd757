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

// Information-energy region boundaries: the energy floor is swept from the
// zero-symbol value up to (just below) the largest achievable energy and the
// constrained capacity is solved at each step.

#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/infometrics.hpp"
#include "swipt/solver.hpp"
#include "swipt/verify.hpp"

namespace swipt {

enum class CurveKind { kStatic, kAsk, kOnOff };

const char* to_string(CurveKind kind);
CurveKind parse_curve_kind(const std::string& name);

/// Everything that determines a curve.
struct CurveConfig {
  CurveKind kind = CurveKind::kStatic;
  ConstraintSet constraints;  ///< static peak, or on-off state set
  HpaModel hpa;
  EhModel eh;
  double dx = 0.05;
  double tol = 1e-8;
  int n_max = 0;  ///< ASK alphabet size (kAsk only)

  bool operator==(const CurveConfig&) const = default;
};

struct CapacityPoint {
  double e_req = 1.0;
  double rate_nats = 0.0;
  double rate_bits = 0.0;
  double energy = 1.0;
  double power = 0.0;
  MassPointDistribution distribution;  ///< on-off: law of the on-state symbol
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool kkt_ok = false;
  double kkt_residual = 0.0;
  double wall_seconds = 0.0;

  bool operator==(const CapacityPoint&) const = default;
};

struct RegionCurve {
  CurveConfig config;
  std::vector<CapacityPoint> points;

  bool operator==(const RegionCurve&) const = default;
};

struct EnergyBounds {
  double floor = 1.0;
  double max = 1.0;
};

struct RegionOptions {
  int n_points = 8;
  /// Grid solve settings; one round of local refinement by default.
  SolveOptions solve{.refine = 1};
  /// Certificate settings; a check step of 0 means solve.dx / 10.
  KktOptions kkt{.check_step = 0.0};
  bool certify = true;
  /// Cold-start every point and solve them concurrently.
  bool parallel = false;
  int threads = 1;
};

double nats_to_bits(double nats);

/// E_floor = 1 (zero symbol); E_max by linear programming over the grid.
EnergyBounds energy_bounds(const ConstraintSet& constraints, const HpaModel& hpa,
                           const EhModel& eh, double dx = 0.05);

/// The n_points energy floors linearly spaced on [E_floor, E_max - delta],
/// delta = 1e-6 (E_max - E_floor). A degenerate range gives one point.
std::vector<double> sweep_levels(const EnergyBounds& bounds, int n_points);

/// Energy range of a curve of any kind. On-off: E_floor = 1 and E_max =
/// (1 - p2) + p2 E_max(a2, P / p2).
EnergyBounds curve_bounds(const CurveConfig& config);

/// Curve of the given kind over sweep_levels(curve_bounds(config)).
RegionCurve trace_curve(const CurveConfig& config, const RegionOptions& opts = {});

RegionCurve trace_region(const ConstraintSet& constraints, const HpaModel& hpa, const EhModel& eh,
                         const RegionOptions& opts = {});

/// Curve of the given kind at prescribed energy floors.
RegionCurve trace_levels(const CurveConfig& config, const std::vector<double>& e_reqs,
                         const RegionOptions& opts = {});

struct HpaComparison {
  RegionCurve with_hpa;
  RegionCurve bypass;
};

/// Both curves on one energy grid clipped to the smaller E_max.
HpaComparison compare_hpa(const ConstraintSet& constraints, const HpaModel& hpa_on,
                          const EhModel& eh, const RegionOptions& opts = {});

struct AskSweep {
  std::vector<RegionCurve> curves;  ///< one per alphabet size, in input order
  RegionCurve unconstrained;
  std::vector<double> max_gap;      ///< largest rate shortfall vs unconstrained
};

/// Alphabet-size family on the unconstrained curve's energy grid. Each size
/// is seeded with the previous size's support at the same energy floor.
AskSweep sweep_ask(const ConstraintSet& constraints, const HpaModel& hpa, const EhModel& eh,
                   const std::vector<int>& sizes, const RegionOptions& opts = {});

/// On-off family on the shared energy grid [1, min_p E_max(p) - delta].
std::vector<RegionCurve> sweep_onoff(double a2, const std::vector<double>& p2s,
                                     const ConstraintSet& constraints, const HpaModel& hpa,
                                     const EhModel& eh, const RegionOptions& opts = {});

}  // namespace swipt
