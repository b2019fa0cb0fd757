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

#include "lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "swipt/errors.hpp"

namespace swipt::lp {
namespace {

constexpr double kPivotTol = 1e-11;

class Simplex {
 public:
  explicit Simplex(const Problem& p) : n_(p.c.size()), m_(p.rows.size()) {
    if (m_ == 0 || m_ > 8) throw ContractError("lp: row count must be in [1, 8]");
    sign_.assign(m_, 1.0);
    b_.resize(static_cast<Eigen::Index>(m_));
    std::vector<RowType> types(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& r = p.rows[i];
      if (r.coef.size() != n_) throw ContractError("lp: row length differs from cost length");
      types[i] = r.type;
      if (r.rhs < 0.0) {
        sign_[i] = -1.0;
        if (r.type == RowType::kLe) types[i] = RowType::kGe;
        else if (r.type == RowType::kGe) types[i] = RowType::kLe;
      }
      b_(static_cast<Eigen::Index>(i)) = sign_[i] * r.rhs;
    }
    // Column layout: structural, then one slack/surplus per inequality, then
    // one artificial per row that has no slack to start the basis.
    std::size_t extra = 0, art = 0;
    for (auto t : types) {
      if (t != RowType::kEq) ++extra;
      if (t != RowType::kLe) ++art;
    }
    total_ = n_ + extra + art;
    first_art_ = n_ + extra;
    a_.setZero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(total_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sign_[i] * p.rows[i].coef[j];
      }
    }
    basis_.resize(m_);
    std::size_t s = n_, t = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      if (types[i] == RowType::kLe) {
        a_(ii, static_cast<Eigen::Index>(s)) = 1.0;
        basis_[i] = s++;
      } else {
        if (types[i] == RowType::kGe) a_(ii, static_cast<Eigen::Index>(s++)) = -1.0;
        a_(ii, static_cast<Eigen::Index>(t)) = 1.0;
        basis_[i] = t++;
      }
    }
    cost_.assign(total_, 0.0);
    c_ = p.c;
  }

  Solution run() {
    Solution sol;
    // Phase one: maximize minus the artificial sum.
    for (std::size_t j = first_art_; j < total_; ++j) cost_[j] = -1.0;
    iterate(true);
    double infeas = 0.0;
    refresh();
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= first_art_) infeas += xb_(static_cast<Eigen::Index>(i));
    }
    const double bscale = std::max(1.0, b_.cwiseAbs().maxCoeff());
    if (infeas > 1e-10 * bscale) {
      sol.feasible = false;
      sol.infeasibility = infeas;
      return sol;
    }
    drive_out_artificials();
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = c_[j];
    iterate(false);
    refresh();

    sol.feasible = true;
    sol.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) sol.x[basis_[i]] = std::max(0.0, xb_(static_cast<Eigen::Index>(i)));
    }
    const Eigen::VectorXd y = duals();
    sol.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) sol.duals[i] = sign_[i] * y(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < n_; ++j) sol.objective += c_[j] * sol.x[j];
    return sol;
  }

 private:
  void refresh() {
    Eigen::MatrixXd bm(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) bm.col(static_cast<Eigen::Index>(i)) = a_.col(static_cast<Eigen::Index>(basis_[i]));
    lu_ = bm.fullPivLu();
    xb_ = lu_.solve(b_);
  }

  Eigen::VectorXd duals() const {
    Eigen::VectorXd cb(static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) cb(static_cast<Eigen::Index>(i)) = cost_[basis_[i]];
    return lu_.transpose().solve(cb);
  }

  bool in_basis(std::size_t j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  void iterate(bool phase_one) {
    const double cscale = [&] {
      double s = 1.0;
      for (std::size_t j = 0; j < total_; ++j) s = std::max(s, std::abs(cost_[j]));
      return s;
    }();
    const double tol = 1e-12 * cscale;
    int degenerate_run = 0;
    const int max_iter = 50 * static_cast<int>(total_ + m_) + 100;
    for (int it = 0; it < max_iter; ++it) {
      refresh();
      const Eigen::VectorXd y = duals();
      const bool bland = degenerate_run > 20;
      std::size_t enter = total_;
      double best = tol;
      const std::size_t limit = phase_one ? total_ : first_art_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (in_basis(j)) continue;
        const double d = cost_[j] - y.dot(a_.col(static_cast<Eigen::Index>(j)));
        if (d > best) {
          enter = j;
          best = d;
          if (bland) break;
        }
      }
      if (enter == total_) return;
      const Eigen::VectorXd u = lu_.solve(a_.col(static_cast<Eigen::Index>(enter)));
      std::size_t leave = m_;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double ui = u(static_cast<Eigen::Index>(i));
        if (ui <= kPivotTol) continue;
        const double r = std::max(0.0, xb_(static_cast<Eigen::Index>(i))) / ui;
        if (r < ratio - 1e-15 || (r <= ratio + 1e-15 && leave < m_ && basis_[i] < basis_[leave])) {
          ratio = r;
          leave = i;
        }
      }
      if (leave == m_) throw ContractError("lp: objective unbounded");
      degenerate_run = ratio <= 1e-15 ? degenerate_run + 1 : 0;
      basis_[leave] = enter;
    }
    throw AccuracyError("lp: simplex iteration limit reached", 0.0, 0.0);
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      refresh();
      // Row i of B^-1 A tells which nonartificial columns can replace it.
      Eigen::VectorXd ei = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_));
      ei(static_cast<Eigen::Index>(i)) = 1.0;
      const Eigen::VectorXd row = lu_.transpose().solve(ei);
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (in_basis(j)) continue;
        if (std::abs(row.dot(a_.col(static_cast<Eigen::Index>(j)))) > 1e-9) {
          basis_[i] = j;
          break;
        }
      }
    }
  }

  std::size_t n_, m_, total_ = 0, first_art_ = 0;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd xb_;
  std::vector<double> sign_, cost_, c_;
  std::vector<std::size_t> basis_;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
};

}  // namespace

Solution maximize(const Problem& problem) { return Simplex(problem).run(); }

}  // namespace swipt::lp
