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

#include "engine.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "lp.hpp"
#include "swipt/errors.hpp"

namespace swipt::engine {
namespace {

struct Reduced {
  std::vector<info::Letter> letters;
  std::vector<double> cost, energy;
  std::vector<int> rep;  // original index -> reduced index
  std::vector<int> first;  // reduced index -> first original index
};

Reduced dedupe(const Problem& p) {
  if (p.letters.empty()) throw ContractError("engine: empty letter list");
  if (p.cost.size() != p.letters.size() || p.energy.size() != p.letters.size()) {
    throw ContractError("engine: cost/energy length differs from letter count");
  }
  using Key = std::tuple<info::Letter, double, double>;
  std::map<Key, int> seen;
  Reduced r;
  for (std::size_t j = 0; j < p.letters.size(); ++j) {
    Key key{p.letters[j], p.cost[j], p.energy[j]};
    auto [it, fresh] = seen.emplace(key, static_cast<int>(r.letters.size()));
    if (fresh) {
      r.letters.push_back(p.letters[j]);
      r.cost.push_back(p.cost[j]);
      r.energy.push_back(p.energy[j]);
      r.first.push_back(static_cast<int>(j));
    }
    r.rep.push_back(it->second);
  }
  return r;
}

struct Polytope {
  const std::vector<double>* cost;
  const std::vector<double>* energy;
  double power_limit;
  bool power_on;
  double energy_req;
  bool energy_on;

  int power_row() const { return power_on ? 1 : -1; }
  int energy_row() const { return energy_on ? (power_on ? 2 : 1) : -1; }

  lp::Problem lp(std::vector<double> c) const {
    lp::Problem prob;
    prob.c = std::move(c);
    prob.rows.push_back({std::vector<double>(cost->size(), 1.0), lp::RowType::kEq, 1.0});
    if (power_on) prob.rows.push_back({*cost, lp::RowType::kLe, power_limit});
    if (energy_on) prob.rows.push_back({*energy, lp::RowType::kGe, energy_req});
    return prob;
  }

  double dot(const std::vector<double>& a, std::span<const double> q) const {
    double s = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) s += a[j] * q[j];
    return s;
  }
  double power_slack(std::span<const double> q) const { return power_limit - dot(*cost, q); }
  double energy_slack(std::span<const double> q) const { return dot(*energy, q) - energy_req; }
  double power_tol() const { return 1e-11 * std::max(1.0, std::abs(power_limit)); }
  double energy_tol() const { return 1e-11 * std::max(1.0, std::abs(energy_req)); }
};

struct Multipliers {
  double mu = 0.0, lambda1 = 0.0, lambda2 = 0.0;
  bool valid = false;
};

class Runner {
 public:
  Runner(const Reduced& r, const Problem& p, const Options& o)
      : red_(r),
        poly_{&r.cost, &r.energy, p.power_limit, p.power_on, p.energy_req, p.energy_on},
        opts_(o),
        ev_(r.letters, o.rule),
        n_(r.letters.size()) {}

  info::MiEvaluator& evaluator() { return ev_; }
  const Polytope& poly() const { return poly_; }

  double derivative_at(const std::vector<double>& q, const std::vector<double>& d, double alpha) {
    std::vector<double> t(n_);
    for (std::size_t j = 0; j < n_; ++j) t[j] = std::max(0.0, q[j] + alpha * d[j]);
    ev_.set_weights(t);
    return ev_.directional(d);
  }

  // Exact line search on the concave section alpha -> I(q + alpha d) over
  // [0, alpha_max]; slope0 is the derivative at alpha = 0.
  double line_search(const std::vector<double>& q, const std::vector<double>& d, double slope0,
                     double alpha_max) {
    double hi = std::min(alpha_max, 1.0);
    double f_hi = derivative_at(q, d, hi);
    for (int k = 0; k < 60 && f_hi > 0.0 && hi < alpha_max; ++k) {
      hi = std::min(2.0 * hi, alpha_max);
      f_hi = derivative_at(q, d, hi);
    }
    if (f_hi >= 0.0) return hi;
    double lo = 0.0, f_lo = slope0;
    int side = 0;
    double x = hi;
    for (int k = 0; k < 80; ++k) {
      x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
      if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
      const double fx = derivative_at(q, d, x);
      if (fx > 0.0) {
        lo = x;
        f_lo = fx;
        if (side == -1) f_hi *= 0.5;
        side = -1;
      } else {
        hi = x;
        f_hi = fx;
        if (side == 1) f_lo *= 0.5;
        side = 1;
      }
      if (hi - lo <= 1e-13 * hi || std::abs(fx) <= 1e-16) break;
    }
    return x;
  }

  // Least-squares multipliers from the support equalities
  // i_j = mu + lambda1 a_j - lambda2 e_j for j in F.
  Multipliers fit(const std::vector<int>& f, bool wp, bool we) const {
    const auto& g = ev_.densities();
    const int rows = 1 + (wp ? 1 : 0) + (we ? 1 : 0);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(f.size()), rows);
    Eigen::VectorXd b(static_cast<Eigen::Index>(f.size()));
    for (std::size_t r = 0; r < f.size(); ++r) {
      const auto rr = static_cast<Eigen::Index>(r);
      int c = 0;
      a(rr, c++) = 1.0;
      if (wp) a(rr, c++) = red_.cost[f[r]];
      if (we) a(rr, c++) = -red_.energy[f[r]];
      b(rr) = g[f[r]];
    }
    Multipliers m;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    cod.setThreshold(1e-10);
    if (cod.rank() < rows) return m;
    const Eigen::VectorXd nu = cod.solve(b);
    int c = 0;
    m.mu = nu(c++);
    if (wp) m.lambda1 = nu(c++);
    if (we) m.lambda2 = nu(c++);
    m.valid = true;
    return m;
  }

  // Active-set Newton ascent restricted to the letters in s.
  Multipliers restricted(const std::vector<int>& s, std::vector<double>& q) {
    std::vector<int> f;
    for (int j : s) {
      if (q[j] > 0.0) f.push_back(j);
    }
    bool wp = poly_.power_on && poly_.power_slack(q) <= poly_.power_tol();
    bool we = poly_.energy_on && poly_.energy_slack(q) <= poly_.energy_tol();
    Multipliers last;
    int released = -1;
    for (int it = 0; it < 200; ++it) {
      ev_.set_weights(q);
      const auto g = ev_.densities();
      const auto nf = static_cast<Eigen::Index>(f.size());
      const int rows = 1 + (wp ? 1 : 0) + (we ? 1 : 0);
      // Newton step in the null space of the working constraint rows, so
      // the step keeps the equalities exactly.
      Eigen::MatrixXd ct(nf, rows);
      Eigen::VectorXd gf(nf);
      for (Eigen::Index r = 0; r < nf; ++r) {
        const int j = f[static_cast<std::size_t>(r)];
        int c = 0;
        ct(r, c++) = 1.0;
        if (wp) ct(r, c++) = red_.cost[j];
        if (we) ct(r, c++) = red_.energy[j];
        gf(r) = g[j];
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ct);
      qr.setThreshold(1e-12);
      const Eigen::Index rank = qr.rank();
      std::vector<double> d(n_, 0.0);
      double slope = 0.0, dmax = 0.0;
      if (nf > rank) {
        const Eigen::MatrixXd qfull = qr.householderQ() * Eigen::MatrixXd::Identity(nf, nf);
        const Eigen::MatrixXd z = qfull.rightCols(nf - rank);
        const Eigen::MatrixXd h = ev_.hessian(f);
        const double tau = 1e-10 * std::max(1e-300, h.diagonal().cwiseAbs().maxCoeff());
        const Eigen::MatrixXd m = -(z.transpose() * h * z) +
                                  tau * Eigen::MatrixXd::Identity(nf - rank, nf - rank);
        const Eigen::VectorXd u = m.ldlt().solve(z.transpose() * gf);
        const Eigen::VectorXd df = z * u;
        for (Eigen::Index r = 0; r < nf; ++r) {
          const int j = f[static_cast<std::size_t>(r)];
          d[j] = df(r);
          slope += d[j] * g[j];
          dmax = std::max(dmax, std::abs(d[j]));
        }
      }
      if (!(slope > 1e-15 * std::max(1.0, ev_.rate())) || dmax < 1e-15) {
        const Multipliers m = fit(f, wp, we);
        if (!m.valid) break;
        last = m;
        if (wp && m.lambda1 < -1e-12) {
          wp = false;
          continue;
        }
        if (we && m.lambda2 < -1e-12) {
          we = false;
          continue;
        }
        int best = -1;
        double best_r = 1e-13 * std::max(1.0, ev_.rate());
        for (int j : s) {
          if (std::find(f.begin(), f.end(), j) != f.end() || j == released) continue;
          const double r = g[j] - m.mu - m.lambda1 * red_.cost[j] + m.lambda2 * red_.energy[j];
          if (r > best_r) {
            best_r = r;
            best = j;
          }
        }
        if (best < 0) break;
        f.insert(std::upper_bound(f.begin(), f.end(), best), best);
        released = best;
        continue;
      }

      double alpha_max = std::numeric_limits<double>::infinity();
      int block = -1;  // letter index, or -2 power, -3 energy
      for (int j : f) {
        if (d[j] < 0.0 && q[j] / -d[j] < alpha_max) {
          alpha_max = q[j] / -d[j];
          block = j;
        }
      }
      if (poly_.power_on && !wp) {
        const double ad = poly_.dot(red_.cost, d);
        if (ad > 0.0) {
          const double a = std::max(0.0, poly_.power_slack(q)) / ad;
          if (a < alpha_max) {
            alpha_max = a;
            block = -2;
          }
        }
      }
      if (poly_.energy_on && !we) {
        const double ed = poly_.dot(red_.energy, d);
        if (ed < 0.0) {
          const double a = std::max(0.0, poly_.energy_slack(q)) / -ed;
          if (a < alpha_max) {
            alpha_max = a;
            block = -3;
          }
        }
      }
      const double alpha = alpha_max > 0.0 ? line_search(q, d, slope, alpha_max) : 0.0;
      for (int j : f) q[j] = std::max(0.0, q[j] + alpha * d[j]);
      if (alpha >= alpha_max) {
        if (block >= 0) q[block] = 0.0;
        if (block == -2) wp = true;
        if (block == -3) we = true;
      }
      released = -1;
      std::erase_if(f, [&](int j) { return q[j] <= 0.0; });
      if (f.empty()) break;
    }
    ev_.set_weights(q);
    return last;
  }

  // One Frank-Wolfe step toward the LP vertex v.
  void fw_step(std::vector<double>& q, const std::vector<double>& v) {
    std::vector<double> d(n_);
    for (std::size_t j = 0; j < n_; ++j) d[j] = v[j] - q[j];
    ev_.set_weights(q);
    const double slope = ev_.directional(d);
    if (slope <= 0.0) return;
    const double alpha = line_search(q, d, slope, 1.0);
    for (std::size_t j = 0; j < n_; ++j) q[j] = std::max(0.0, q[j] + alpha * d[j]);
  }

  // Score of a multiplier candidate: worst violation of the optimality
  // conditions (over all letters) and of equality on the support.
  double score(const Multipliers& m, const std::vector<double>& q) const {
    const auto& g = ev_.densities();
    const double base = ev_.rate() - m.lambda1 * poly_.power_limit + m.lambda2 * poly_.energy_req;
    double worst = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = g[j] - m.lambda1 * red_.cost[j] + m.lambda2 * red_.energy[j] - base;
      worst = std::max(worst, q[j] > 0.0 ? std::abs(v) : v);
    }
    return worst;
  }

 private:
  const Reduced& red_;
  Polytope poly_;
  Options opts_;
  info::MiEvaluator ev_;
  std::size_t n_;
};

}  // namespace

double max_energy(const Problem& p) {
  const Reduced r = dedupe(p);
  Polytope poly{&r.cost, &r.energy, p.power_limit, p.power_on, p.energy_req, false};
  const lp::Solution s = lp::maximize(poly.lp(r.energy));
  if (!s.feasible) throw InfeasibleError("power", "no letter meets the average-power limit");
  return s.objective;
}

Result solve(const Problem& p, const Options& opts, std::span<const double> warm) {
  if (!(opts.tol > 0.0)) throw ContractError("engine: tolerance must be positive");
  const Reduced red = dedupe(p);
  const std::size_t n = red.letters.size();
  Runner run(red, p, opts);
  const Polytope& poly = run.poly();

  // Feasibility and starting point.
  std::vector<double> q(n, 0.0);
  bool have_start = false;
  if (!warm.empty()) {
    if (warm.size() != p.letters.size()) throw ContractError("engine: warm start length mismatch");
    double total = 0.0;
    for (std::size_t j = 0; j < warm.size(); ++j) {
      q[red.rep[j]] += std::max(0.0, warm[j]);
      total += std::max(0.0, warm[j]);
    }
    if (total > 0.0) {
      for (double& v : q) v /= total;
      const bool power_ok = !poly.power_on || poly.power_slack(q) >= -poly.power_tol();
      have_start = power_ok && (!poly.energy_on || poly.energy_slack(q) >= -poly.energy_tol());
      if (power_ok && !have_start) {
        // Move the warm start toward the energy-maximizing vertex just far
        // enough to meet the energy floor; both ends meet the power limit.
        const lp::Solution v = lp::maximize(poly.lp(red.energy));
        const double ev = v.feasible ? poly.dot(red.energy, v.x) : -INFINITY;
        const double eq = poly.dot(red.energy, q);
        if (v.feasible && ev >= poly.energy_req) {
          const double theta = std::clamp((poly.energy_req - eq) / (ev - eq), 0.0, 1.0);
          for (std::size_t j = 0; j < n; ++j) q[j] = (1.0 - theta) * q[j] + theta * v.x[j];
          have_start = poly.energy_slack(q) >= -poly.energy_tol();
        }
      }
    }
  }
  if (!have_start) std::fill(q.begin(), q.end(), 0.0);
  if (!have_start) {
    std::vector<double> c(n, 0.0);
    if (poly.energy_on) {
      c = red.energy;
    } else {
      for (std::size_t j = 0; j < n; ++j) c[j] = -red.cost[j];
    }
    const lp::Solution s = lp::maximize(poly.lp(c));
    if (!s.feasible) {
      Polytope no_energy = poly;
      no_energy.energy_on = false;
      const lp::Solution e = lp::maximize(no_energy.lp(red.energy));
      if (!e.feasible) throw InfeasibleError("power", "no letter meets the average-power limit");
      std::ostringstream msg;
      msg.precision(12);
      msg << "energy requirement " << p.energy_req << " exceeds the largest achievable energy "
          << e.objective;
      throw InfeasibleError("energy", msg.str());
    }
    q = s.x;
  }

  std::vector<int> support;
  Multipliers newton;
  Result out;
  double gap = std::numeric_limits<double>::infinity();
  lp::Solution vertex;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    run.evaluator().set_weights(q);
    const auto g = run.evaluator().densities();
    vertex = lp::maximize(poly.lp(g));
    double gq = 0.0;
    for (std::size_t j = 0; j < n; ++j) gq += g[j] * q[j];
    gap = std::max(0.0, vertex.objective - gq);
    if (gap <= opts.tol) break;

    // Working support: current support, LP vertex, and the letter with the
    // largest reduced cost under the last support multipliers.
    support.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (q[j] > 0.0 || vertex.x[j] > 0.0) support.push_back(static_cast<int>(j));
    }
    if (newton.valid) {
      int best = -1;
      double best_r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double r = g[j] - newton.mu - newton.lambda1 * red.cost[j] + newton.lambda2 * red.energy[j];
        if (r > best_r) {
          best_r = r;
          best = static_cast<int>(j);
        }
      }
      if (best >= 0 && !std::binary_search(support.begin(), support.end(), best)) {
        support.insert(std::upper_bound(support.begin(), support.end(), best), best);
      }
    }
    run.fw_step(q, vertex.x);
    newton = run.restricted(support, q);
  }
  if (!(gap <= opts.tol)) {
    throw AccuracyError("engine: duality gap above tolerance after iteration limit",
                        run.evaluator().rate(), gap);
  }

  run.evaluator().set_weights(q);
  Multipliers dual;
  dual.mu = vertex.duals[0];
  if (poly.power_row() >= 0) dual.lambda1 = std::max(0.0, vertex.duals[poly.power_row()]);
  if (poly.energy_row() >= 0) dual.lambda2 = std::max(0.0, -vertex.duals[poly.energy_row()]);
  dual.valid = true;
  std::vector<int> f;
  for (std::size_t j = 0; j < n; ++j) {
    if (q[j] > 0.0) f.push_back(static_cast<int>(j));
  }
  const bool wp = poly.power_on && poly.power_slack(q) <= poly.power_tol();
  const bool we = poly.energy_on && poly.energy_slack(q) <= poly.energy_tol();
  Multipliers chosen = dual;
  Multipliers refit = run.fit(f, wp, we);
  if (refit.valid && refit.lambda1 >= 0.0 && refit.lambda2 >= 0.0 &&
      run.score(refit, q) < run.score(dual, q)) {
    chosen = refit;
  }

  out.q.assign(p.letters.size(), 0.0);
  for (std::size_t j = 0; j < n; ++j) out.q[red.first[j]] = q[j];
  out.rate = run.evaluator().rate();
  out.power = poly.dot(red.cost, q);
  out.energy = poly.dot(red.energy, q);
  out.lambda1 = chosen.lambda1;
  out.lambda2 = chosen.lambda2;
  out.offset = chosen.mu;
  out.gap = gap;
  out.iterations = it + 1;
  out.info.resize(p.letters.size());
  for (std::size_t j = 0; j < p.letters.size(); ++j) {
    out.info[j] = run.evaluator().densities()[red.rep[j]];
  }
  return out;
}

}  // namespace swipt::engine
