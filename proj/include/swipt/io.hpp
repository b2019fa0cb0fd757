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

// Curve files. Tabular output is one CSV row per point with 12 significant
// digits; structured output is JSON that reloads bit-exactly.

#include <filesystem>
#include <string>

#include "swipt/region.hpp"

namespace swipt {

enum class CurveFormat { kTabular, kStructured };

inline constexpr int kSchemaVersion = 1;

/// Header `e_req,rate_nats,rate_bits,energy,lambda1,lambda2,kkt_ok` then
/// one row per point in curve order.
std::string curve_tabular(const RegionCurve& curve);
std::string curve_structured(const RegionCurve& curve);
RegionCurve parse_curve(const std::string& text);

/// Throws ContractError on an empty curve and IoError on write failure.
void emit_curve(const RegionCurve& curve, CurveFormat format, const std::filesystem::path& path);
RegionCurve load_curve(const std::filesystem::path& path);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace swipt
