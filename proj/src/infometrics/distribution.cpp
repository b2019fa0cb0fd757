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

#include <algorithm>
#include <cmath>

#include "swipt/errors.hpp"
#include "swipt/infometrics.hpp"

namespace swipt {

void MassPointDistribution::validate(double merge_radius) const {
  if (points.empty()) throw ContractError("MassPointDistribution: empty support");
  if (!(peak >= 0.0)) throw ContractError("MassPointDistribution: negative peak");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.q >= 0.0)) throw ContractError("MassPointDistribution: negative weight");
    if (!(p.x >= 0.0) || p.x > peak * (1.0 + 1e-12)) {
      throw ContractError("MassPointDistribution: location outside [0, peak]");
    }
    if (i > 0 && !(p.x - points[i - 1].x > merge_radius)) {
      throw ContractError("MassPointDistribution: locations not increasing or too close");
    }
    total += p.q;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw ContractError("MassPointDistribution: weights do not sum to 1");
  }
}

MassPointDistribution MassPointDistribution::point_mass(double x, double peak) {
  return {{{x, 1.0}}, peak};
}

MassPointDistribution MassPointDistribution::canonical(std::vector<MassPoint> points, double peak,
                                                       double merge_radius) {
  std::sort(points.begin(), points.end(),
            [](const MassPoint& a, const MassPoint& b) { return a.x < b.x; });
  MassPointDistribution out{{}, peak};
  for (const auto& p : points) {
    if (!out.points.empty() && p.x - out.points.back().x <= merge_radius) {
      auto& last = out.points.back();
      const double q = last.q + p.q;
      if (q > 0.0) last.x = (last.x * last.q + p.x * p.q) / q;
      last.q = q;
    } else {
      out.points.push_back(p);
    }
  }
  return out;
}

std::vector<double> MassPointDistribution::locations() const {
  std::vector<double> v;
  for (const auto& p : points) v.push_back(p.x);
  return v;
}

std::vector<double> MassPointDistribution::weights() const {
  std::vector<double> v;
  for (const auto& p : points) v.push_back(p.q);
  return v;
}

void ExtendedDistribution::validate() const {
  if (points.empty()) throw ContractError("ExtendedDistribution: empty support");
  if (states.empty()) throw ContractError("ExtendedDistribution: empty state alphabet");
  double total = 0.0;
  for (const auto& p : points) {
    if (p.x.size() != states.size()) {
      throw ContractError("ExtendedDistribution: letter length differs from state count");
    }
    if (!(p.q >= 0.0)) throw ContractError("ExtendedDistribution: negative weight");
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (!(p.x[i] >= 0.0) || p.x[i] > states[i].amplitude * (1.0 + 1e-12)) {
        throw ContractError("ExtendedDistribution: coordinate exceeds its state peak");
      }
    }
    total += p.q;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw ContractError("ExtendedDistribution: weights do not sum to 1");
  }
}

}  // namespace swipt
