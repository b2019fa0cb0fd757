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

// Run configuration for the command-line tool. The document is JSON; every
// key has a default, and the resolved form (defaults plus overrides) is
// embedded in each result document.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/infometrics.hpp"
#include "swipt/region.hpp"

namespace swipt {

enum class Mode { kSolve, kRegion, kOnOff, kExtended, kAsk, kVerify, kMc };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& name);

struct RunConfig {
  Mode mode = Mode::kSolve;
  ChannelSpec channel{};
  HpaModel hpa{};
  EhModel eh{};

  double peak = 2.0;
  double avg_power = 1.0;
  double e_req = 1.0;
  /// Per-state peaks for extended and on-off runs; empty means static.
  std::vector<PeakState> states;

  double dx = 0.05;
  double tol = 1e-8;
  int max_iter = 300;
  int refine = 1;
  double prune_threshold = 1e-7;

  double kkt_step = 0.0;  ///< 0 means dx / 10
  double kkt_tol = 1e-4;
  int kkt_nodes = 1024;

  std::string curve = "static";  ///< region mode: static | ask | onoff
  int n_points = 8;
  int n_max = 4;
  std::vector<int> sizes{2, 4, 8};
  std::vector<double> p2s{0.3, 0.6, 0.9};
  std::vector<double> levels;  ///< explicit energy floors; empty means a sweep

  int n_start = 2;

  std::optional<MassPointDistribution> distribution;

  std::int64_t mc_n = 1'000'000;
  std::uint64_t mc_seed = 1;

  std::string out_dir = "swipt-out";
  std::string name = "run";
  bool tabular = true;
  bool structured = true;

  int threads = 1;

  /// Throws ConfigError on any field outside its domain.
  void validate() const;
};

/// Parses a config document and applies `key=value` overrides to scalar
/// leaves (dotted paths). Unknown keys are errors. Throws ConfigError.
RunConfig load_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// The resolved document for `cfg` (JSON text).
std::string dump_config(const RunConfig& cfg);

}  // namespace swipt
