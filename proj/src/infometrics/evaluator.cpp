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

#include "evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swipt/errors.hpp"
#include "swipt/kernels/kernels.hpp"

namespace swipt::info {

Letter Letter::make(std::vector<Component> comps) {
  std::sort(comps.begin(), comps.end(),
            [](const Component& a, const Component& b) { return a.scale < b.scale; });
  Letter out;
  double total = 0.0;
  for (const auto& c : comps) {
    if (!(c.scale >= 1.0) || !std::isfinite(c.scale)) {
      throw ContractError("Letter: output scales must be finite and >= 1");
    }
    if (c.weight < 0.0) throw ContractError("Letter: negative component weight");
    if (c.weight == 0.0) continue;
    total += c.weight;
    if (!out.comps.empty() && out.comps.back().scale == c.scale) {
      out.comps.back().weight += c.weight;
    } else {
      out.comps.push_back(c);
    }
  }
  if (out.comps.empty() || !(total > 0.0)) throw ContractError("Letter: no positive weight");
  for (auto& c : out.comps) c.weight /= total;
  return out;
}

bool Letter::operator==(const Letter& o) const {
  if (comps.size() != o.comps.size()) return false;
  for (std::size_t m = 0; m < comps.size(); ++m) {
    if (comps[m].scale != o.comps[m].scale || comps[m].weight != o.comps[m].weight) return false;
  }
  return true;
}

bool Letter::operator<(const Letter& o) const {
  const std::size_t n = std::min(comps.size(), o.comps.size());
  for (std::size_t m = 0; m < n; ++m) {
    if (comps[m].scale != o.comps[m].scale) return comps[m].scale < o.comps[m].scale;
    if (comps[m].weight != o.comps[m].weight) return comps[m].weight < o.comps[m].weight;
  }
  return comps.size() < o.comps.size();
}

MiEvaluator::MiEvaluator(std::vector<Letter> letters, const numerics::QuadratureRule& rule)
    : letters_(std::move(letters)) {
  if (letters_.empty()) throw ContractError("MiEvaluator: empty letter list");
  double widest = 1.0;
  for (const auto& l : letters_) {
    widest = std::max(widest, l.max_scale());
    for (const auto& c : l.comps) scales_.push_back(c.scale);
  }
  std::sort(scales_.begin(), scales_.end());
  scales_.erase(std::unique(scales_.begin(), scales_.end()), scales_.end());
  nodes_ = numerics::make_nodes(rule.with_scale(std::max(rule.scale, widest)));

  const std::size_t nk = nodes_.size();
  ew_.assign(scales_.size(), std::vector<double>(nk));
  for (std::size_t s = 0; s < scales_.size(); ++s) {
    kernels::exp_affine(nodes_.y, -std::log(scales_[s]), 1.0 / scales_[s], nodes_.w, ew_[s]);
  }
  letter_comps_.resize(letters_.size());
  negent_.resize(letters_.size());
  for (std::size_t j = 0; j < letters_.size(); ++j) {
    for (const auto& c : letters_[j].comps) {
      letter_comps_[j].emplace_back(scale_index(c.scale), c.weight);
    }
    negent_[j] = negentropy(letters_[j]);
  }
  log_out_.resize(nk);
  h_.resize(scales_.size());
  info_.resize(letters_.size());
}

int MiEvaluator::scale_index(double s) const {
  auto it = std::lower_bound(scales_.begin(), scales_.end(), s);
  if (it == scales_.end() || *it != s) return -1;
  return static_cast<int>(it - scales_.begin());
}

// Integral of f log f for a letter on the node set. A single component has
// the closed integrand form -log s - y / s, which keeps i = 0 exact for a
// letter measured against itself.
double MiEvaluator::negentropy(const Letter& letter) const {
  const std::size_t nk = nodes_.size();
  std::vector<double> logc, rate, lf(nk);
  for (const auto& c : letter.comps) {
    logc.push_back(std::log(c.weight) - std::log(c.scale));
    rate.push_back(1.0 / c.scale);
  }
  kernels::log_sum_exp(nodes_.y, logc, rate, lf);
  double total = 0.0;
  for (const auto& c : letter.comps) {
    const int s = scale_index(c.scale);
    if (s >= 0) {
      total += c.weight * kernels::dot(ew_[s], lf);
    } else {
      std::vector<double> e(nk);
      kernels::exp_affine(nodes_.y, -std::log(c.scale), 1.0 / c.scale, nodes_.w, e);
      total += c.weight * kernels::dot(e, lf);
    }
  }
  return total;
}

double MiEvaluator::cross_term(const Letter& letter) const {
  double total = 0.0;
  for (const auto& c : letter.comps) {
    const int s = scale_index(c.scale);
    if (s >= 0) {
      total += c.weight * h_[s];
    } else {
      std::vector<double> e(nodes_.size());
      kernels::exp_affine(nodes_.y, -std::log(c.scale), 1.0 / c.scale, nodes_.w, e);
      total += c.weight * kernels::dot(e, log_out_);
    }
  }
  return total;
}

void MiEvaluator::set_weights(std::span<const double> q) {
  if (q.size() != letters_.size()) throw ContractError("MiEvaluator: weight length mismatch");
  q_.assign(q.begin(), q.end());
  std::vector<double> mass(scales_.size(), 0.0);
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q[j] <= 0.0) continue;
    for (const auto& [s, w] : letter_comps_[j]) mass[s] += q[j] * w;
  }
  std::vector<double> logc, rate;
  for (std::size_t s = 0; s < scales_.size(); ++s) {
    if (mass[s] <= 0.0) continue;
    logc.push_back(std::log(mass[s]) - std::log(scales_[s]));
    rate.push_back(1.0 / scales_[s]);
  }
  if (logc.empty()) throw ContractError("MiEvaluator: input law has no mass");
  kernels::log_sum_exp(nodes_.y, logc, rate, log_out_);
  for (std::size_t s = 0; s < scales_.size(); ++s) h_[s] = kernels::dot(ew_[s], log_out_);
  rate_ = 0.0;
  for (std::size_t j = 0; j < letters_.size(); ++j) {
    double cross = 0.0;
    for (const auto& [s, w] : letter_comps_[j]) cross += w * h_[s];
    info_[j] = std::max(0.0, negent_[j] - cross);
    rate_ += q[j] * info_[j];
  }
}

double MiEvaluator::directional(std::span<const double> d) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) sum += d[j] * info_[j];
  return sum;
}

double MiEvaluator::density_of(const Letter& letter) const {
  return std::max(0.0, negentropy(letter) - cross_term(letter));
}

Eigen::MatrixXd MiEvaluator::hessian(std::span<const int> idx) const {
  const std::size_t nk = nodes_.size();
  Eigen::MatrixXd u(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(nk));
  std::vector<double> shift(nk);
  for (std::size_t k = 0; k < nk; ++k) shift[k] = 0.5 * (std::log(nodes_.w[k]) - log_out_[k]);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t k = 0; k < nk; ++k) {
      double f = 0.0;
      for (const auto& [s, w] : letter_comps_[idx[r]]) {
        const double sc = scales_[s];
        f += w * std::exp(-std::log(sc) - nodes_.y[k] / sc + shift[k]);
      }
      u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = f;
    }
  }
  return -(u * u.transpose());
}

}  // namespace swipt::info
