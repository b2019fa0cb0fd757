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
#include <limits>

#include "swipt/kernels/kernels.hpp"

namespace swipt::kernels {
namespace {

void exp_affine(std::span<const double> y, double logc, double rate,
                std::span<const double> w, std::span<double> out) {
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double v = std::exp(logc - rate * y[k]);
    out[k] = w.empty() ? v : w[k] * v;
  }
}

void log_sum_exp(std::span<const double> y, std::span<const double> logc,
                 std::span<const double> rate, std::span<double> out) {
  const std::size_t m = logc.size();
  for (std::size_t k = 0; k < y.size(); ++k) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < m; ++s) peak = std::max(peak, logc[s] - rate[s] * y[k]);
    double sum = 0.0;
    for (std::size_t s = 0; s < m; ++s) sum += std::exp(logc[s] - rate[s] * y[k] - peak);
    out[k] = peak + std::log(sum);
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

double weighted_exp_sum(std::span<const double> w, std::span<const double> arg) {
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) sum += w[k] * std::exp(arg[k]);
  return sum;
}

void vexp(std::span<const double> x, std::span<double> out) {
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::exp(v); });
}

void vlog(std::span<const double> x, std::span<double> out) {
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::log(v); });
}

constexpr KernelTable kScalar{"scalar", exp_affine, log_sum_exp, dot, weighted_exp_sum, vexp, vlog};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace swipt::kernels
