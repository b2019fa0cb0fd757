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

#include "swipt/numerics/bessel.hpp"

#include <cmath>
#include <numbers>

#include "swipt/errors.hpp"

namespace swipt::numerics {
namespace {

constexpr double kSeriesLimit = 30.0;

double series(double z) {
  const double quarter_z2 = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= quarter_z2 / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// e^z / sqrt(2 pi z) * sum_k ((2k-1)!!)^2 / (k! (8z)^k)
double asymptotic(double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * z);
    if (next > term) break;  // divergent tail
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(z - 0.5 * std::log(2.0 * std::numbers::pi * z)) * sum;
}

}  // namespace

double bessel_i0(double z) {
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError("bessel_i0: argument must be finite and nonnegative");
  }
  return z < kSeriesLimit ? series(z) : asymptotic(z);
}

}  // namespace swipt::numerics
