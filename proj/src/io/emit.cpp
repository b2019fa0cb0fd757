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


#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_codec.hpp"
#include "swipt/errors.hpp"
#include "swipt/io.hpp"

namespace swipt {
namespace {

void require_points(const RegionCurve& curve) {
  if (curve.points.empty()) throw ContractError("curve has no points");
}

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string curve_tabular(const RegionCurve& curve) {
  require_points(curve);
  std::string out = "e_req,rate_nats,rate_bits,energy,lambda1,lambda2,kkt_ok\n";
  for (const auto& p : curve.points) {
    out += g12(p.e_req) + ',' + g12(p.rate_nats) + ',' + g12(p.rate_bits) + ',' + g12(p.energy) +
           ',' + g12(p.lambda1) + ',' + g12(p.lambda2) + ',' + (p.kkt_ok ? "1" : "0") + '\n';
  }
  return out;
}

std::string curve_structured(const RegionCurve& curve) {
  require_points(curve);
  io::json j = io::to_json(curve);
  j["schema_version"] = kSchemaVersion;
  return j.dump(2) + "\n";
}

RegionCurve parse_curve(const std::string& text) {
  io::json j;
  try {
    j = io::json::parse(text);
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("curve document: ") + e.what());
  }
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion) {
    throw ConfigError("curve document: unsupported schema version");
  }
  try {
    return io::curve_from(j);
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("curve document: ") + e.what());
  } catch (const ContractError& e) {
    throw ConfigError(std::string("curve document: ") + e.what());
  }
}

void emit_curve(const RegionCurve& curve, CurveFormat format, const std::filesystem::path& path) {
  write_text(path, format == CurveFormat::kTabular ? curve_tabular(curve) : curve_structured(curve));
}

RegionCurve load_curve(const std::filesystem::path& path) { return parse_curve(read_text(path)); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError(path.string(), "cannot create directory (" + ec.message() + ")");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(path.string(), "cannot open for writing");
  f << text;
  f.close();
  if (!f) throw IoError(path.string(), "write failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace swipt
