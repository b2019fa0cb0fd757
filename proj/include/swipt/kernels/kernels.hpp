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

// Data-parallel inner loops of the information computations.
//
// Every kernel has a scalar reference implementation (std::exp / std::log)
// and, on x86-64, an AVX2+FMA variant built with vectorized exp/log. The
// active table is chosen once at first use from the CPU features, and can be
// pinned with SWIPT_KERNELS=scalar|avx2 or select_backend().

#include <span>
#include <string_view>

namespace swipt::kernels {

struct KernelTable {
  const char* name;

  /// out[k] = w[k] * exp(logc - rate * y[k]); w may be empty (treated as 1).
  void (*exp_affine)(std::span<const double> y, double logc, double rate,
                     std::span<const double> w, std::span<double> out);

  /// out[k] = log(sum_s exp(logc[s] - rate[s] * y[k])), evaluated stably.
  /// Requires logc.size() == rate.size() >= 1.
  void (*log_sum_exp)(std::span<const double> y, std::span<const double> logc,
                      std::span<const double> rate, std::span<double> out);

  /// sum_k a[k] * b[k]
  double (*dot)(std::span<const double> a, std::span<const double> b);

  /// sum_k w[k] * exp(arg[k])
  double (*weighted_exp_sum)(std::span<const double> w, std::span<const double> arg);

  /// Elementwise exp / log (log requires positive finite input).
  void (*exp)(std::span<const double> x, std::span<double> out);
  void (*log)(std::span<const double> x, std::span<double> out);
};

enum class Backend { kAuto, kScalar, kAvx2 };

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable* avx2_table();

/// Table used by the library.
const KernelTable& active();

/// Pins the backend. Returns false (and leaves the selection unchanged) when
/// the requested backend is unavailable.
bool select_backend(Backend b);

Backend parse_backend(std::string_view name);

inline void exp_affine(std::span<const double> y, double logc, double rate,
                       std::span<const double> w, std::span<double> out) {
  active().exp_affine(y, logc, rate, w, out);
}
inline void log_sum_exp(std::span<const double> y, std::span<const double> logc,
                        std::span<const double> rate, std::span<double> out) {
  active().log_sum_exp(y, logc, rate, out);
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a, b);
}
inline double weighted_exp_sum(std::span<const double> w, std::span<const double> arg) {
  return active().weighted_exp_sum(w, arg);
}

}  // namespace swipt::kernels
