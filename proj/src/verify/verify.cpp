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

#include "swipt/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "swipt/errors.hpp"
#include "swipt/numerics/bessel.hpp"

namespace swipt {
namespace {

struct Table {
  std::vector<std::vector<double>> x;
  std::vector<double> cost, energy, info;
  std::vector<char> support;
};

struct Activity {
  bool power = false;
  bool energy = false;
};

// Multipliers from the support equalities
//   C + lambda1 (a_i - P) - lambda2 (e_i - E_req) = i_i,
// fitted by least squares over the unknowns that complementary slackness
// leaves free. When the support cannot determine them the supplied values
// are kept and only C is fitted.
void refit(const Table& t, const ConstraintSet& c, Activity act, double& cc, double& l1,
           double& l2) {
  std::vector<std::size_t> sup;
  for (std::size_t k = 0; k < t.x.size(); ++k) {
    if (t.support[k]) sup.push_back(k);
  }
  if (!act.power) l1 = 0.0;
  if (!act.energy) l2 = 0.0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const int cols = 1 + (act.power ? 1 : 0) + (act.energy ? 1 : 0);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(sup.size()), cols);
    Eigen::VectorXd b(static_cast<Eigen::Index>(sup.size()));
    for (std::size_t r = 0; r < sup.size(); ++r) {
      const auto k = sup[r];
      const auto rr = static_cast<Eigen::Index>(r);
      int col = 0;
      a(rr, col++) = 1.0;
      if (act.power) a(rr, col++) = t.cost[k] - c.avg_power;
      if (act.energy) a(rr, col++) = -(t.energy[k] - c.e_req);
      b(rr) = t.info[k];
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    cod.setThreshold(1e-10);
    if (cod.rank() == cols) {
      const Eigen::VectorXd nu = cod.solve(b);
      int col = 1;
      const double f1 = act.power ? nu(col++) : 0.0;
      const double f2 = act.energy ? nu(col++) : 0.0;
      if (f1 >= 0.0 && f2 >= 0.0) {
        cc = nu(0);
        l1 = f1;
        l2 = f2;
        return;
      }
      if (f1 < 0.0) act.power = false, l1 = 0.0;
      if (f2 < 0.0) act.energy = false, l2 = 0.0;
      continue;
    }
    break;
  }
  double sum = 0.0;
  for (auto k : sup) {
    sum += t.info[k] - l1 * (t.cost[k] - c.avg_power) + l2 * (t.energy[k] - c.e_req);
  }
  cc = sup.empty() ? 0.0 : sum / static_cast<double>(sup.size());
}

KktReport finish(const Table& t, const ConstraintSet& c, Activity act, double l1, double l2,
                 const KktOptions& opts) {
  KktReport rep;
  rep.tol = opts.tol;
  double cc = 0.0;
  refit(t, c, act, cc, l1, l2);
  rep.c = cc;
  rep.lambda1 = l1;
  rep.lambda2 = l2;
  for (std::size_t k = 0; k < t.x.size(); ++k) {
    const double g = l1 * (t.cost[k] - c.avg_power) - l2 * (t.energy[k] - c.e_req) + cc - t.info[k];
    rep.table.push_back({t.x[k], g, t.support[k] != 0});
    rep.max_violation = std::max(rep.max_violation, -g);
    if (t.support[k]) rep.max_support_residual = std::max(rep.max_support_residual, std::abs(g));
  }
  rep.verdict = rep.max_violation <= opts.tol && rep.max_support_residual <= opts.tol;
  return rep;
}

// A constraint counts as active when its slack is at rounding level or
// when multiplier times slack stays below a tenth of the tolerance.
Activity activity(double max_cost, double power, double energy, double min_energy,
                  const ConstraintSet& c, double l1, double l2, double tol) {
  Activity a;
  const double ps = c.avg_power - power;
  const double es = energy - c.e_req;
  a.power = max_cost > c.avg_power &&
            (ps <= 1e-8 * std::max(1.0, c.avg_power) || (l1 > 0.0 && l1 * ps <= 0.1 * tol));
  a.energy = c.e_req > min_energy &&
             (es <= 1e-8 * std::max(1.0, c.e_req) || (l2 > 0.0 && l2 * es <= 0.1 * tol));
  return a;
}

}  // namespace

KktReport kkt_check(const SolveResult& result, const ConstraintSet& constraints,
                    const HpaModel& hpa, const EhModel& eh, const KktOptions& opts) {
  constraints.validate();
  if (!constraints.is_static()) throw ContractError("kkt_check: static constraint set required");
  if (!(opts.check_step > 0.0)) throw ContractError("kkt_check: check step must be positive");
  const double peak = constraints.max_peak();
  const auto& dist = result.distribution;
  Table t;
  std::vector<double> xs;
  for (const auto& p : dist.points) {
    xs.push_back(p.x);
    t.support.push_back(p.q > opts.support_threshold);
  }
  if (!opts.support_only) {
    const auto check = peak > 0.0 ? build_grid(peak, std::min(opts.check_step, peak))
                                  : std::vector<double>{0.0};
    for (double x : check) {
      xs.push_back(x);
      t.support.push_back(0);
    }
  }
  t.info = mi_density_batch(xs, dist, hpa, opts.rule);
  for (double x : xs) {
    t.x.push_back({x});
    t.cost.push_back(x * x);
    t.energy.push_back(harvested_energy(x, hpa, eh));
  }
  const Activity act = activity(peak * peak, average_power(dist), average_energy(dist, hpa, eh), 1.0,
                                constraints, result.lambda1, result.lambda2, opts.tol);
  return finish(t, constraints, act, result.lambda1, result.lambda2, opts);
}

KktReport kkt_check_extended(const ExtendedSolveResult& result, const ConstraintSet& constraints,
                             const HpaModel& hpa, const EhModel& eh, const KktOptions& opts) {
  constraints.validate();
  if (constraints.states.size() != 2) {
    throw ContractError("kkt_check_extended: two-state alphabet required");
  }
  const auto& dist = result.distribution;
  const auto& st = constraints.states;
  Table t;
  for (const auto& p : dist.points) {
    t.x.push_back(p.x);
    t.support.push_back(p.q > opts.support_threshold);
  }
  auto axis = [&](double a) {
    return a > 0.0 ? build_grid(a, std::min(opts.check_step, a)) : std::vector<double>{0.0};
  };
  const auto g1 = axis(st[0].amplitude);
  const auto g2 = axis(st[1].amplitude);
  for (double x1 : g1) {
    for (double x2 : g2) {
      t.x.push_back({x1, x2});
      t.support.push_back(0);
    }
  }
  t.info = mixture_mi_density_batch(t.x, dist, hpa, opts.rule);
  double max_cost = 0.0;
  for (const auto& x : t.x) {
    t.cost.push_back(letter_power(x, st));
    t.energy.push_back(letter_energy(x, st, hpa, eh));
    max_cost = std::max(max_cost, t.cost.back());
  }
  const Activity act =
      activity(max_cost, average_power(dist), average_energy(dist, hpa, eh), 1.0, constraints,
               result.lambda1, result.lambda2, opts.tol);
  return finish(t, constraints, act, result.lambda1, result.lambda2, opts);
}

SolveResult as_result(const MassPointDistribution& dist, const HpaModel& hpa, const EhModel& eh,
                      const numerics::QuadratureRule& rule) {
  SolveResult r;
  r.distribution = dist;
  r.rate = mutual_information(dist, hpa, rule);
  r.power = average_power(dist);
  r.energy = average_energy(dist, hpa, eh);
  r.grid = dist.locations();
  r.weights = dist.weights();
  return r;
}

ExtendedSolveResult as_result(const ExtendedDistribution& dist, const HpaModel& hpa,
                              const EhModel& eh, const numerics::QuadratureRule& rule) {
  ExtendedSolveResult r;
  r.distribution = dist;
  r.rate = mixture_mi(dist, hpa, rule);
  r.power = average_power(dist);
  r.energy = average_energy(dist, hpa, eh);
  for (const auto& p : dist.points) {
    r.grid.push_back(p.x);
    r.weights.push_back(p.q);
  }
  return r;
}

std::vector<double> kkt_residuals_s(const std::vector<double>& s, const MassPointDistribution& dist,
                                    const ConstraintSet& constraints, const HpaModel& hpa,
                                    const EhModel& eh, const KktReport& report,
                                    const numerics::QuadratureRule& rule) {
  std::vector<double> si, qi;
  double widest = 1.0;
  for (const auto& p : dist.points) {
    const double xh = hpa_distort(p.x, hpa);
    si.push_back(1.0 / (1.0 + xh * xh));
    qi.push_back(p.q);
    widest = std::max(widest, 1.0 / si.back());
  }
  auto log_p = [&](double y) {
    double peak = -INFINITY;
    for (std::size_t i = 0; i < si.size(); ++i) {
      if (qi[i] > 0.0) peak = std::max(peak, std::log(qi[i] * si[i]) - si[i] * y);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < si.size(); ++i) {
      if (qi[i] > 0.0) sum += std::exp(std::log(qi[i] * si[i]) - si[i] * y - peak);
    }
    return peak + std::log(sum);
  };
  std::vector<double> out;
  for (double sv : s) {
    if (!(sv > 0.0) || sv > 1.0) throw DomainError("kkt_residuals_s: s must lie in (0, 1]");
    const double xh = std::sqrt(std::max(0.0, 1.0 / sv - 1.0));
    const double x = hpa_inverse(xh, hpa);
    const double e = numerics::bessel_i0(std::numbers::sqrt2 * eh.b * std::abs(eh.h2) * xh);
    auto integrand = [&](double y) {
      const double f = sv * std::exp(-sv * y);
      if (f < 1e-300) return 0.0;
      return f * (std::log(sv) - sv * y - log_p(y));
    };
    const double info = numerics::integrate_halfline(
        integrand, rule.with_scale(std::max({rule.scale, widest, 1.0 / sv})));
    out.push_back(report.lambda1 * (x * x - constraints.avg_power) -
                  report.lambda2 * (e - constraints.e_req) + report.c - std::max(0.0, info));
  }
  return out;
}

MassPointDistribution low_pp_binary(double avg_power, double peak, const HpaModel& hpa,
                                    const EhModel& eh) {
  (void)eh;
  if (!(avg_power > 0.0) || !(peak > 0.0) || !std::isfinite(avg_power) || !std::isfinite(peak)) {
    throw DomainError("low_pp_binary: power and peak must be positive");
  }
  auto rate = [&](double q) {
    if (q <= 0.0 || q >= 1.0) return 0.0;
    return mutual_information({{{0.0, 1.0 - q}, {peak, q}}, peak}, hpa);
  };
  // Golden-section search for the unconstrained binary maximizer.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = rate(c), fd = rate(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = rate(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = rate(d);
    }
  }
  const double q_star = 0.5 * (a + b);
  const double q = std::min(avg_power / (peak * peak), q_star);
  if (q >= 1.0) return MassPointDistribution::point_mass(peak, peak);
  return {{{0.0, 1.0 - q}, {peak, q}}, peak};
}

double find_transition(double avg_power, const HpaModel& hpa, const EhModel& eh, double lo,
                       double hi, const TransitionOptions& opts) {
  if (!(lo > 0.0) || !(hi > lo)) throw ContractError("find_transition: need 0 < lo < hi");
  auto binary_ok = [&](double a) {
    const auto dist = low_pp_binary(avg_power, a, hpa, eh);
    const ConstraintSet c = ConstraintSet::static_peak(a, avg_power, opts.e_req);
    KktOptions ko;
    ko.tol = opts.kkt_tol;
    ko.check_step = a / 500.0;
    return kkt_check(as_result(dist, hpa, eh), c, hpa, eh, ko).verdict;
  };
  if (!binary_ok(lo) || binary_ok(hi)) {
    throw SearchError("find_transition: binary law must pass at lo and fail at hi", lo, hi);
  }
  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    (binary_ok(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace swipt
