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

// Output density, information density and mutual information for the static
// amplitude channel and for the state-mixture (Shannon strategy) channel.
// All rates are in nats.

#include <span>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/numerics/quadrature.hpp"

namespace swipt {

struct MassPoint {
  double x = 0.0;
  double q = 0.0;

  bool operator==(const MassPoint&) const = default;
};

/// Finite-support input law on [0, peak].
struct MassPointDistribution {
  static constexpr double kDefaultMergeRadius = 1e-9;

  std::vector<MassPoint> points;
  double peak = 0.0;

  /// Throws ContractError unless weights are a probability vector (1e-10),
  /// locations are strictly increasing in [0, peak] and no two are closer
  /// than merge_radius.
  void validate(double merge_radius = kDefaultMergeRadius) const;

  static MassPointDistribution point_mass(double x, double peak);

  /// Sorts by location and merges locations within merge_radius into their
  /// weight-averaged location. Weights are not renormalized.
  static MassPointDistribution canonical(std::vector<MassPoint> points, double peak,
                                         double merge_radius = kDefaultMergeRadius);

  std::vector<double> locations() const;
  std::vector<double> weights() const;
  std::size_t size() const { return points.size(); }
  bool operator==(const MassPointDistribution&) const = default;
};

/// One letter of the extended alphabet: the symbol x[i] is sent when the
/// peak-power state is i.
struct ExtendedPoint {
  std::vector<double> x;
  double q = 0.0;
};

struct ExtendedDistribution {
  std::vector<ExtendedPoint> points;
  std::vector<PeakState> states;

  void validate() const;
  std::size_t size() const { return points.size(); }
};

double output_density(double y, const MassPointDistribution& dist, const HpaModel& hpa);

/// i(x; F) = KL(p(.|x) || p(.; F)). The quadrature scale is widened to the
/// slowest-decaying density involved.
double mi_density(double x, const MassPointDistribution& dist, const HpaModel& hpa,
                  const numerics::QuadratureRule& rule = {});

/// i(x; F) for many x on the fixed node set of `rule` (no doubling check).
std::vector<double> mi_density_batch(std::span<const double> xs, const MassPointDistribution& dist,
                                     const HpaModel& hpa,
                                     const numerics::QuadratureRule& rule = {});

double mutual_information(const MassPointDistribution& dist, const HpaModel& hpa,
                          const numerics::QuadratureRule& rule = {});

/// Information density of the extended letter `x` against the mixture law.
double mixture_mi_density(std::span<const double> x, const ExtendedDistribution& dist,
                          const HpaModel& hpa, const numerics::QuadratureRule& rule = {});

std::vector<double> mixture_mi_density_batch(const std::vector<std::vector<double>>& xs,
                                             const ExtendedDistribution& dist, const HpaModel& hpa,
                                             const numerics::QuadratureRule& rule = {});

double mixture_mi(const ExtendedDistribution& dist, const HpaModel& hpa,
                  const numerics::QuadratureRule& rule = {});

double average_power(const MassPointDistribution& dist);
double average_energy(const MassPointDistribution& dist, const HpaModel& hpa, const EhModel& eh);

/// State-weighted sum_i p_i E[X_i^2].
double average_power(const ExtendedDistribution& dist);
/// State-weighted sum_i p_i E[harvested_energy(X_i)].
double average_energy(const ExtendedDistribution& dist, const HpaModel& hpa, const EhModel& eh);

/// Per-letter cost and energy of an extended letter.
double letter_power(std::span<const double> x, std::span<const PeakState> states);
double letter_energy(std::span<const double> x, std::span<const PeakState> states,
                     const HpaModel& hpa, const EhModel& eh);

}  // namespace swipt
