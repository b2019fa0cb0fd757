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

// Sampling estimates of rate and harvested energy, used to cross-check the
// quadrature values.
//
// Generator: std::mt19937_64 (period 2^19937 - 1). The stream is cut into
// chunks of kChunk draws; chunk k is seeded with splitmix64(seed + k), so
// results do not depend on the thread count.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/infometrics.hpp"

namespace swipt {

struct SimConfig {
  std::int64_t n = 1'000'000;
  std::uint64_t seed = 1;
  HpaModel hpa{};
  EhModel eh{};
  ChannelSpec channel{};  ///< y scale is sigma1_sq + d(x)^2
  int threads = 1;

  static constexpr std::int64_t kChunk = 1 << 16;

  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
};

/// I.i.d. amplitudes drawn from the mass-point law.
std::vector<double> sample_symbols(const MassPointDistribution& dist, const SimConfig& cfg);

/// Received powers for i.i.d. symbols: HPA, Rayleigh fading and noise,
/// y = -(sigma1_sq + d(x)^2) log u.
std::vector<double> sample_outputs(const MassPointDistribution& dist, const SimConfig& cfg);

Estimate empirical_energy(const MassPointDistribution& dist, const SimConfig& cfg);
Estimate empirical_energy(const ExtendedDistribution& dist, const SimConfig& cfg);

/// Sample mean of log p(y|x) / p(y) over (x, y) draws.
Estimate empirical_mi(const MassPointDistribution& dist, const SimConfig& cfg);
/// Same for the state-mixture channel: a letter is drawn from the law, the
/// state from its probabilities, and the density ratio uses the mixture.
Estimate empirical_mi(const ExtendedDistribution& dist, const SimConfig& cfg);

/// P(Y <= y) under the law.
double output_cdf(double y, const MassPointDistribution& dist, const SimConfig& cfg);

/// sup |F_n - F| of the samples against `cdf`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic one-sample critical value at level alpha (0.01 or 0.05).
double ks_critical(std::int64_t n, double alpha = 0.01);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace swipt
