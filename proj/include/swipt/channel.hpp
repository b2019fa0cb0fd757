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

// Physical-layer models in normalized units: the SSPA amplitude curve, the
// Bessel energy-harvesting map and the exponential-output Rayleigh channel
// p(y | x) = exp(-y / (1 + d(x)^2)) / (1 + d(x)^2).

#include <span>
#include <vector>

namespace swipt {

/// Solid-state power amplifier AM/AM curve
///   d(r) = r / (1 + (r / a_s)^(2 beta))^(1 / (2 beta)).
/// With `bypass` set the amplifier is ideal and d is the identity.
struct HpaModel {
  double a_s = 1.0;
  double beta = 1.0;
  bool bypass = true;

  static HpaModel linear() { return {}; }
  static HpaModel sspa(double a_s, double beta) { return {a_s, beta, false}; }

  void validate() const;
  bool operator==(const HpaModel&) const = default;
};

/// Harvested energy per symbol I0(sqrt(2) b h2 |xhat|).
struct EhModel {
  double b = 0.5;
  double h2 = 1.0;

  void validate() const;
  bool operator==(const EhModel&) const = default;
};

/// Fading and noise variances of the information link (linear units).
struct ChannelSpec {
  double sigma1_sq = 1.0;
  double sigma2_sq = 1.0;

  void validate() const;
};

struct PeakState {
  double amplitude = 0.0;
  double prob = 1.0;

  bool operator==(const PeakState&) const = default;
};

/// Average-power limit, peak-power state alphabet and harvested-energy floor.
/// A single state is the static peak-power case.
struct ConstraintSet {
  double avg_power = 1.0;
  std::vector<PeakState> states{{1.0, 1.0}};
  double e_req = 1.0;

  static ConstraintSet static_peak(double peak, double avg_power, double e_req = 1.0) {
    return {avg_power, {{peak, 1.0}}, e_req};
  }

  bool is_static() const { return states.size() == 1; }
  double max_peak() const { return states.back().amplitude; }

  void validate() const;
  bool operator==(const ConstraintSet&) const = default;
};

double hpa_distort(double r, const HpaModel& hpa);

/// Inverse of hpa_distort on [0, a_s); identity when bypassed.
double hpa_inverse(double xhat, const HpaModel& hpa);

double harvested_energy(double x, const HpaModel& hpa, const EhModel& eh);

/// Scale (mean) 1 + d(x)^2 of the exponential output law given input x.
double output_scale(double x, const HpaModel& hpa);

double cond_density(double y, double x, const HpaModel& hpa);
double log_cond_density(double y, double x, const HpaModel& hpa);

/// sum_i probs[i] * cond_density(y, xvec[i]).
double mixture_density(double y, std::span<const double> xvec, std::span<const double> probs,
                       const HpaModel& hpa);

struct ScaleReport {
  double amplitude_scale = 1.0;  ///< sigma1 / sigma2
  double power_scale = 1.0;      ///< sigma1^2 / sigma2^2
};

struct NormalizedModel {
  ConstraintSet constraints;
  HpaModel hpa;
  EhModel eh;
  ScaleReport report;
};

/// Maps physical amplitudes to the unit-variance channel: amplitudes (and the
/// SSPA saturation level) scale by sigma1/sigma2, power by sigma1^2/sigma2^2,
/// and h2 by the inverse amplitude factor so harvested energy is unchanged.
NormalizedModel normalize_spec(const ChannelSpec& spec, const ConstraintSet& constraints,
                               const HpaModel& hpa = {}, const EhModel& eh = {});

}  // namespace swipt
