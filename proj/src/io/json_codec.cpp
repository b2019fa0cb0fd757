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


#include "json_codec.hpp"

#include <cmath>
#include <limits>

#include "swipt/errors.hpp"

namespace swipt::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double num_field(const json& j, const char* key) {
  try {
    return get_num(field(j, key));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

}  // namespace

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double get_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a number, got " + j.dump());
}

json to_json(const HpaModel& h) {
  return {{"bypass", h.bypass}, {"a_s", num(h.a_s)}, {"beta", num(h.beta)}};
}

json to_json(const EhModel& e) { return {{"b", num(e.b)}, {"h2", num(e.h2)}}; }

json to_json(const ConstraintSet& c) {
  json states = json::array();
  for (const auto& s : c.states) states.push_back({{"amplitude", num(s.amplitude)}, {"prob", num(s.prob)}});
  return {{"avg_power", num(c.avg_power)}, {"e_req", num(c.e_req)}, {"states", states}};
}

json to_json(const MassPointDistribution& d) {
  json pts = json::array();
  for (const auto& p : d.points) pts.push_back({num(p.x), num(p.q)});
  return {{"peak", num(d.peak)}, {"points", pts}};
}

json to_json(const ExtendedDistribution& d) {
  json pts = json::array();
  for (const auto& p : d.points) {
    json x = json::array();
    for (double v : p.x) x.push_back(num(v));
    pts.push_back({{"x", x}, {"q", num(p.q)}});
  }
  json states = json::array();
  for (const auto& s : d.states) states.push_back({{"amplitude", num(s.amplitude)}, {"prob", num(s.prob)}});
  return {{"states", states}, {"points", pts}};
}

json to_json(const CurveConfig& c) {
  return {{"kind", to_string(c.kind)}, {"constraints", to_json(c.constraints)},
          {"hpa", to_json(c.hpa)},     {"eh", to_json(c.eh)},
          {"dx", num(c.dx)},           {"tol", num(c.tol)},
          {"n_max", c.n_max}};
}

json to_json(const CapacityPoint& p) {
  return {{"e_req", num(p.e_req)},
          {"rate_nats", num(p.rate_nats)},
          {"rate_bits", num(p.rate_bits)},
          {"energy", num(p.energy)},
          {"power", num(p.power)},
          {"lambda1", num(p.lambda1)},
          {"lambda2", num(p.lambda2)},
          {"kkt_ok", p.kkt_ok},
          {"kkt_residual", num(p.kkt_residual)},
          {"wall_seconds", num(p.wall_seconds)},
          {"distribution", to_json(p.distribution)}};
}

json to_json(const RegionCurve& c) {
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back(to_json(p));
  return {{"config", to_json(c.config)}, {"points", pts}};
}

HpaModel hpa_from(const json& j) {
  HpaModel h;
  h.bypass = field(j, "bypass").get<bool>();
  h.a_s = num_field(j, "a_s");
  h.beta = num_field(j, "beta");
  return h;
}

EhModel eh_from(const json& j) { return {num_field(j, "b"), num_field(j, "h2")}; }

ConstraintSet constraints_from(const json& j) {
  ConstraintSet c;
  c.avg_power = num_field(j, "avg_power");
  c.e_req = num_field(j, "e_req");
  c.states.clear();
  for (const auto& s : field(j, "states")) c.states.push_back({num_field(s, "amplitude"), num_field(s, "prob")});
  return c;
}

MassPointDistribution distribution_from(const json& j) {
  MassPointDistribution d;
  d.peak = num_field(j, "peak");
  for (const auto& p : field(j, "points")) {
    if (!p.is_array() || p.size() != 2) throw ConfigError("distribution point must be [x, q]");
    d.points.push_back({get_num(p[0]), get_num(p[1])});
  }
  return d;
}

CurveConfig curve_config_from(const json& j) {
  CurveConfig c;
  c.kind = parse_curve_kind(field(j, "kind").get<std::string>());
  c.constraints = constraints_from(field(j, "constraints"));
  c.hpa = hpa_from(field(j, "hpa"));
  c.eh = eh_from(field(j, "eh"));
  c.dx = num_field(j, "dx");
  c.tol = num_field(j, "tol");
  c.n_max = field(j, "n_max").get<int>();
  return c;
}

CapacityPoint point_from(const json& j) {
  CapacityPoint p;
  p.e_req = num_field(j, "e_req");
  p.rate_nats = num_field(j, "rate_nats");
  p.rate_bits = num_field(j, "rate_bits");
  p.energy = num_field(j, "energy");
  p.power = num_field(j, "power");
  p.lambda1 = num_field(j, "lambda1");
  p.lambda2 = num_field(j, "lambda2");
  p.kkt_ok = field(j, "kkt_ok").get<bool>();
  p.kkt_residual = num_field(j, "kkt_residual");
  p.wall_seconds = num_field(j, "wall_seconds");
  p.distribution = distribution_from(field(j, "distribution"));
  return p;
}

RegionCurve curve_from(const json& j) {
  RegionCurve c;
  c.config = curve_config_from(field(j, "config"));
  for (const auto& p : field(j, "points")) c.points.push_back(point_from(p));
  return c;
}

}  // namespace swipt::io
