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

// JSON conversions shared by curve files, configs and result documents.

#include <json.hpp>

#include "swipt/channel.hpp"
#include "swipt/infometrics.hpp"
#include "swipt/region.hpp"

namespace swipt::io {

using nlohmann::json;

/// Finite values stay numbers; infinities and NaN become strings so they
/// survive a round trip.
json num(double v);
double get_num(const json& j);

json to_json(const HpaModel& h);
json to_json(const EhModel& e);
json to_json(const ConstraintSet& c);
json to_json(const MassPointDistribution& d);
json to_json(const ExtendedDistribution& d);
json to_json(const CurveConfig& c);
json to_json(const CapacityPoint& p);
json to_json(const RegionCurve& c);

HpaModel hpa_from(const json& j);
EhModel eh_from(const json& j);
ConstraintSet constraints_from(const json& j);
MassPointDistribution distribution_from(const json& j);
CurveConfig curve_config_from(const json& j);
CapacityPoint point_from(const json& j);
RegionCurve curve_from(const json& j);

}  // namespace swipt::io
