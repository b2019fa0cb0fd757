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

#include "swipt/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "swipt/errors.hpp"
#include "swipt/numerics/bessel.hpp"

namespace swipt {
namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and nonnegative");
  }
}

}  // namespace

void HpaModel::validate() const {
  if (bypass) return;
  if (!(a_s > 0.0) || !(beta > 0.0) || !std::isfinite(a_s) || !std::isfinite(beta)) {
    throw ContractError("HpaModel: a_s and beta must be positive");
  }
}

void EhModel::validate() const {
  if (!(b >= 0.0) || !std::isfinite(b) || !std::isfinite(h2)) {
    throw ContractError("EhModel: b must be nonnegative and h2 finite");
  }
}

void ChannelSpec::validate() const {
  if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0)) {
    throw ContractError("ChannelSpec: variances must be positive");
  }
}

void ConstraintSet::validate() const {
  if (!(avg_power > 0.0) || !std::isfinite(avg_power)) {
    throw ContractError("ConstraintSet: average power must be positive");
  }
  if (!std::isfinite(e_req)) throw ContractError("ConstraintSet: e_req must be finite");
  if (states.empty()) throw ContractError("ConstraintSet: empty peak-power state list");
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    if (!(s.amplitude >= 0.0) || !std::isfinite(s.amplitude)) {
      throw ContractError("ConstraintSet: peak amplitudes must be nonnegative");
    }
    if (!(s.prob >= 0.0)) throw ContractError("ConstraintSet: state probabilities must be >= 0");
    if (i > 0 && !(s.amplitude > states[i - 1].amplitude)) {
      throw ContractError("ConstraintSet: peak amplitudes must be strictly increasing");
    }
    total += s.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ContractError("ConstraintSet: state probabilities must sum to 1");
  }
}

double hpa_distort(double r, const HpaModel& hpa) {
  require_nonnegative(r, "hpa_distort: amplitude");
  if (hpa.bypass || r == 0.0) return r;
  const double two_beta = 2.0 * hpa.beta;
  // Factor out the larger of r and a_s so the power never overflows.
  if (r <= hpa.a_s) {
    const double t = std::pow(r / hpa.a_s, two_beta);
    return r * std::exp(-std::log1p(t) / two_beta);
  }
  const double t = std::pow(hpa.a_s / r, two_beta);
  return hpa.a_s * std::exp(-std::log1p(t) / two_beta);
}

double hpa_inverse(double xhat, const HpaModel& hpa) {
  require_nonnegative(xhat, "hpa_inverse: amplitude");
  if (hpa.bypass || xhat == 0.0) return xhat;
  if (xhat >= hpa.a_s) throw DomainError("hpa_inverse: amplitude at or above saturation");
  const double two_beta = 2.0 * hpa.beta;
  const double t = std::pow(xhat / hpa.a_s, two_beta);
  return xhat * std::exp(-std::log1p(-t) / two_beta);
}

double harvested_energy(double x, const HpaModel& hpa, const EhModel& eh) {
  const double xhat = hpa_distort(x, hpa);
  return numerics::bessel_i0(std::numbers::sqrt2 * eh.b * std::abs(eh.h2) * xhat);
}

double output_scale(double x, const HpaModel& hpa) {
  const double xhat = hpa_distort(x, hpa);
  return 1.0 + xhat * xhat;
}

double log_cond_density(double y, double x, const HpaModel& hpa) {
  require_nonnegative(y, "cond_density: output");
  const double s = output_scale(x, hpa);
  return -std::log(s) - y / s;
}

double cond_density(double y, double x, const HpaModel& hpa) {
  require_nonnegative(y, "cond_density: output");
  const double s = output_scale(x, hpa);
  return std::exp(-y / s) / s;
}

double mixture_density(double y, std::span<const double> xvec, std::span<const double> probs,
                       const HpaModel& hpa) {
  if (xvec.size() != probs.size()) {
    throw ContractError("mixture_density: amplitude and probability lists differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < xvec.size(); ++i) sum += probs[i] * cond_density(y, xvec[i], hpa);
  return sum;
}

NormalizedModel normalize_spec(const ChannelSpec& spec, const ConstraintSet& constraints,
                               const HpaModel& hpa, const EhModel& eh) {
  spec.validate();
  const double power_scale = spec.sigma1_sq / spec.sigma2_sq;
  const double amp_scale = std::sqrt(power_scale);
  NormalizedModel out{constraints, hpa, eh, {amp_scale, power_scale}};
  out.constraints.avg_power *= power_scale;
  for (auto& s : out.constraints.states) s.amplitude *= amp_scale;
  out.hpa.a_s *= amp_scale;
  out.eh.h2 /= amp_scale;
  return out;
}

}  // namespace swipt
