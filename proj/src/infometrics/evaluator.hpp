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

// Fixed-node evaluation of information densities for an input law over a
// fixed list of letters. Each letter induces an output density that is a
// finite mixture of exponentials sum_m w_m exp(-y / s_m) / s_m.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "swipt/numerics/quadrature.hpp"

namespace swipt::info {

struct Component {
  double weight = 1.0;
  double scale = 1.0;
};

/// Components sorted by scale, equal scales merged, zero weights removed.
struct Letter {
  std::vector<Component> comps;

  static Letter make(std::vector<Component> comps);
  static Letter single(double scale) { return Letter{{{1.0, scale}}}; }
  double max_scale() const { return comps.back().scale; }
  bool operator==(const Letter& o) const;
  bool operator<(const Letter& o) const;
};

class MiEvaluator {
 public:
  MiEvaluator(std::vector<Letter> letters, const numerics::QuadratureRule& rule);

  std::size_t size() const { return letters_.size(); }
  const Letter& letter(std::size_t j) const { return letters_[j]; }
  const numerics::NodeSet& nodes() const { return nodes_; }

  /// Sets the input law; q.size() == size(). Zero weights are allowed.
  void set_weights(std::span<const double> q);

  /// Information density of every letter at the current law, clamped at 0.
  const std::vector<double>& densities() const { return info_; }

  /// sum_j q_j i_j at the current law.
  double rate() const { return rate_; }

  /// sum_j d_j i_j at the current law.
  double directional(std::span<const double> d) const;

  /// Information density of an arbitrary letter at the current law.
  double density_of(const Letter& letter) const;

  /// Hessian of the rate restricted to the letters in idx.
  Eigen::MatrixXd hessian(std::span<const int> idx) const;

 private:
  int scale_index(double s) const;
  double negentropy(const Letter& letter) const;
  double cross_term(const Letter& letter) const;

  std::vector<Letter> letters_;
  numerics::NodeSet nodes_;
  std::vector<double> scales_;                 // distinct, ascending
  std::vector<std::vector<double>> ew_;        // w_k exp(-y_k / s) / s
  std::vector<double> negent_;                 // per letter
  std::vector<std::vector<std::pair<int, double>>> letter_comps_;
  std::vector<double> q_;
  std::vector<double> log_out_;                // log p(y_k)
  std::vector<double> h_;                      // per scale: sum_k ew * log p
  std::vector<double> info_;
  double rate_ = 0.0;
};

}  // namespace swipt::info
