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

#include "swipt/infometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evaluator.hpp"
#include "swipt/errors.hpp"
#include "swipt/numerics/quadrature.hpp"

namespace swipt {
namespace {

struct LogMixture {
  std::vector<double> logc;
  std::vector<double> rate;

  double operator()(double y) const {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < logc.size(); ++s) peak = std::max(peak, logc[s] - rate[s] * y);
    double sum = 0.0;
    for (std::size_t s = 0; s < logc.size(); ++s) sum += std::exp(logc[s] - rate[s] * y - peak);
    return peak + std::log(sum);
  }
};

LogMixture log_mixture(const std::vector<info::Component>& comps) {
  LogMixture m;
  for (const auto& c : comps) {
    if (c.weight <= 0.0) continue;
    m.logc.push_back(std::log(c.weight) - std::log(c.scale));
    m.rate.push_back(1.0 / c.scale);
  }
  return m;
}

std::vector<info::Component> output_components(const MassPointDistribution& dist,
                                               const HpaModel& hpa) {
  std::vector<info::Component> comps;
  for (const auto& p : dist.points) comps.push_back({p.q, output_scale(p.x, hpa)});
  return comps;
}

std::vector<info::Component> letter_components(std::span<const double> x,
                                               std::span<const PeakState> states,
                                               const HpaModel& hpa) {
  std::vector<info::Component> comps;
  for (std::size_t i = 0; i < x.size(); ++i) comps.push_back({states[i].prob, output_scale(x[i], hpa)});
  return comps;
}

std::vector<info::Component> output_components(const ExtendedDistribution& dist,
                                               const HpaModel& hpa) {
  std::vector<info::Component> comps;
  for (const auto& p : dist.points) {
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      comps.push_back({p.q * dist.states[i].prob, output_scale(p.x[i], hpa)});
    }
  }
  return comps;
}

double widest(const std::vector<info::Component>& comps) {
  double s = 1.0;
  for (const auto& c : comps) s = std::max(s, c.scale);
  return s;
}

// KL(letter || output) by checked half-line quadrature, computed through the
// difference of log densities.
double kl_checked(const std::vector<info::Component>& letter,
                  const std::vector<info::Component>& output,
                  const numerics::QuadratureRule& rule) {
  const LogMixture lf = log_mixture(letter);
  const LogMixture lp = log_mixture(output);
  const double scale = std::max({rule.scale, widest(letter), widest(output)});
  auto integrand = [&](double y) {
    const double a = lf(y);
    const double f = std::exp(a);
    if (f < 1e-300) return 0.0;
    return f * (a - lp(y));
  };
  return std::max(0.0, numerics::integrate_halfline(integrand, rule.with_scale(scale)));
}

info::Letter as_letter(std::vector<info::Component> comps) {
  return info::Letter::make(std::move(comps));
}

// Evaluator whose letter list is the support of the law; returns densities
// of the query letters.
std::vector<double> batch_densities(const std::vector<info::Component>& output,
                                    const std::vector<info::Letter>& queries,
                                    const numerics::QuadratureRule& rule) {
  std::vector<info::Letter> support;
  std::vector<double> q;
  for (const auto& c : output) {
    if (c.weight <= 0.0) continue;
    support.push_back(info::Letter::single(c.scale));
    q.push_back(c.weight);
  }
  double scale = widest(output);
  for (const auto& l : queries) scale = std::max(scale, l.max_scale());
  info::MiEvaluator ev(support, rule.with_scale(std::max(rule.scale, scale)));
  ev.set_weights(q);
  std::vector<double> out;
  out.reserve(queries.size());
  for (const auto& l : queries) out.push_back(ev.density_of(l));
  return out;
}

}  // namespace

double output_density(double y, const MassPointDistribution& dist, const HpaModel& hpa) {
  double sum = 0.0;
  for (const auto& p : dist.points) sum += p.q * cond_density(y, p.x, hpa);
  return sum;
}

double mi_density(double x, const MassPointDistribution& dist, const HpaModel& hpa,
                  const numerics::QuadratureRule& rule) {
  if (!(x >= 0.0)) throw DomainError("mi_density: negative amplitude");
  return kl_checked({{1.0, output_scale(x, hpa)}}, output_components(dist, hpa), rule);
}

std::vector<double> mi_density_batch(std::span<const double> xs, const MassPointDistribution& dist,
                                     const HpaModel& hpa, const numerics::QuadratureRule& rule) {
  std::vector<info::Letter> queries;
  for (double x : xs) queries.push_back(info::Letter::single(output_scale(x, hpa)));
  return batch_densities(output_components(dist, hpa), queries, rule);
}

double mutual_information(const MassPointDistribution& dist, const HpaModel& hpa,
                          const numerics::QuadratureRule& rule) {
  const auto output = output_components(dist, hpa);
  double total = 0.0;
  for (const auto& p : dist.points) {
    if (p.q <= 0.0) continue;
    total += p.q * kl_checked({{1.0, output_scale(p.x, hpa)}}, output, rule);
  }
  return total;
}

double mixture_mi_density(std::span<const double> x, const ExtendedDistribution& dist,
                          const HpaModel& hpa, const numerics::QuadratureRule& rule) {
  if (x.size() != dist.states.size()) {
    throw ContractError("mixture_mi_density: letter length differs from state count");
  }
  return kl_checked(letter_components(x, dist.states, hpa), output_components(dist, hpa), rule);
}

std::vector<double> mixture_mi_density_batch(const std::vector<std::vector<double>>& xs,
                                             const ExtendedDistribution& dist, const HpaModel& hpa,
                                             const numerics::QuadratureRule& rule) {
  std::vector<info::Letter> queries;
  for (const auto& x : xs) {
    if (x.size() != dist.states.size()) {
      throw ContractError("mixture_mi_density_batch: letter length differs from state count");
    }
    queries.push_back(as_letter(letter_components(x, dist.states, hpa)));
  }
  return batch_densities(output_components(dist, hpa), queries, rule);
}

double mixture_mi(const ExtendedDistribution& dist, const HpaModel& hpa,
                  const numerics::QuadratureRule& rule) {
  const auto output = output_components(dist, hpa);
  double total = 0.0;
  for (const auto& p : dist.points) {
    if (p.q <= 0.0) continue;
    total += p.q * kl_checked(letter_components(p.x, dist.states, hpa), output, rule);
  }
  return total;
}

double average_power(const MassPointDistribution& dist) {
  double sum = 0.0;
  for (const auto& p : dist.points) sum += p.q * p.x * p.x;
  return sum;
}

double average_energy(const MassPointDistribution& dist, const HpaModel& hpa, const EhModel& eh) {
  double sum = 0.0;
  for (const auto& p : dist.points) sum += p.q * harvested_energy(p.x, hpa, eh);
  return sum;
}

double letter_power(std::span<const double> x, std::span<const PeakState> states) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += states[i].prob * x[i] * x[i];
  return sum;
}

double letter_energy(std::span<const double> x, std::span<const PeakState> states,
                     const HpaModel& hpa, const EhModel& eh) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += states[i].prob * harvested_energy(x[i], hpa, eh);
  return sum;
}

double average_power(const ExtendedDistribution& dist) {
  double sum = 0.0;
  for (const auto& p : dist.points) sum += p.q * letter_power(p.x, dist.states);
  return sum;
}

double average_energy(const ExtendedDistribution& dist, const HpaModel& hpa, const EhModel& eh) {
  double sum = 0.0;
  for (const auto& p : dist.points) sum += p.q * letter_energy(p.x, dist.states, hpa, eh);
  return sum;
}

}  // namespace swipt
