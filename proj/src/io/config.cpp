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


#include "swipt/config.hpp"

#include <cmath>

#include "json_codec.hpp"
#include "swipt/errors.hpp"
#include "swipt/numerics/quadrature.hpp"

namespace swipt {
namespace {

using io::json;

constexpr const char* kModes[] = {"solve", "region", "onoff", "extended", "ask", "verify", "mc"};

json states_json(const std::vector<PeakState>& states) {
  json a = json::array();
  for (const auto& s : states) a.push_back({{"amplitude", s.amplitude}, {"prob", s.prob}});
  return a;
}

json to_doc(const RunConfig& c) {
  return {
      {"mode", to_string(c.mode)},
      {"channel", {{"sigma1_sq", c.channel.sigma1_sq}, {"sigma2_sq", c.channel.sigma2_sq}}},
      {"hpa", io::to_json(c.hpa)},
      {"eh", io::to_json(c.eh)},
      {"constraints",
       {{"peak", c.peak}, {"avg_power", c.avg_power}, {"e_req", c.e_req}, {"states", states_json(c.states)}}},
      {"solve",
       {{"dx", c.dx},
        {"tol", c.tol},
        {"max_iter", c.max_iter},
        {"refine", c.refine},
        {"prune_threshold", c.prune_threshold}}},
      {"kkt", {{"check_step", c.kkt_step}, {"tol", c.kkt_tol}, {"nodes", c.kkt_nodes}}},
      {"sweep",
       {{"curve", c.curve},
        {"n_points", c.n_points},
        {"n_max", c.n_max},
        {"sizes", c.sizes},
        {"p2", c.p2s},
        {"levels", c.levels}}},
      {"extended", {{"n_start", c.n_start}}},
      {"distribution", c.distribution ? io::to_json(*c.distribution) : json(nullptr)},
      {"mc", {{"n", c.mc_n}, {"seed", c.mc_seed}}},
      {"output",
       {{"dir", c.out_dir}, {"name", c.name}, {"tabular", c.tabular}, {"structured", c.structured}}},
      {"threads", c.threads},
  };
}

bool same_kind(const json& def, const json& v) {
  if (def.is_null()) return true;
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_number_integer()) return v.is_number_integer();
  if (def.is_number()) return v.is_number();
  if (def.is_string()) return v.is_string();
  if (def.is_array()) return v.is_array();
  if (def.is_object()) return v.is_object();
  return false;
}

const char* kind_name(const json& def) {
  if (def.is_boolean()) return "a boolean";
  if (def.is_number_integer()) return "an integer";
  if (def.is_number()) return "a number";
  if (def.is_string()) return "a string";
  if (def.is_array()) return "an array";
  return "an object";
}

// Overlays `user` on `base`; every key must already exist in `base` with
// the same value kind.
void overlay(json& base, const json& user, const std::string& path) {
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown key '" + key + "'");
    json& slot = base[it.key()];
    if (!same_kind(slot, it.value())) {
      throw ConfigError("'" + key + "' must be " + kind_name(slot));
    }
    if (slot.is_object() && it.value().is_object() && key != "distribution") {
      overlay(slot, it.value(), key);
    } else {
      slot = it.value();
    }
  }
}

void apply_override(json& doc, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + spec + "' is not key=value");
  const std::string key = spec.substr(0, eq);
  const std::string text = spec.substr(eq + 1);
  json* slot = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!slot->is_object() || !slot->contains(part)) throw ConfigError("unknown key '" + key + "'");
    slot = &(*slot)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (slot->is_object() || slot->is_array() || slot->is_null()) {
    throw ConfigError("override '" + key + "' does not name a scalar leaf");
  }
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;
  }
  if (slot->is_string() && !value.is_string()) value = text;
  if (!same_kind(*slot, value)) throw ConfigError("'" + key + "' must be " + kind_name(*slot));
  *slot = value;
}

template <typename T>
T get(const json& j, const char* key) {
  return j.at(key).get<T>();
}

RunConfig from_doc(const json& d) {
  RunConfig c;
  c.mode = parse_mode(get<std::string>(d, "mode"));
  const auto& ch = d.at("channel");
  c.channel = {get<double>(ch, "sigma1_sq"), get<double>(ch, "sigma2_sq")};
  c.hpa = io::hpa_from(d.at("hpa"));
  c.eh = io::eh_from(d.at("eh"));
  const auto& k = d.at("constraints");
  c.peak = get<double>(k, "peak");
  c.avg_power = get<double>(k, "avg_power");
  c.e_req = get<double>(k, "e_req");
  for (const auto& s : k.at("states")) {
    if (!s.is_object()) throw ConfigError("constraints.states entries must be objects");
    c.states.push_back({get<double>(s, "amplitude"), get<double>(s, "prob")});
  }
  const auto& s = d.at("solve");
  c.dx = get<double>(s, "dx");
  c.tol = get<double>(s, "tol");
  c.max_iter = get<int>(s, "max_iter");
  c.refine = get<int>(s, "refine");
  c.prune_threshold = get<double>(s, "prune_threshold");
  const auto& v = d.at("kkt");
  c.kkt_step = get<double>(v, "check_step");
  c.kkt_tol = get<double>(v, "tol");
  c.kkt_nodes = get<int>(v, "nodes");
  const auto& w = d.at("sweep");
  c.curve = get<std::string>(w, "curve");
  c.n_points = get<int>(w, "n_points");
  c.n_max = get<int>(w, "n_max");
  c.sizes = get<std::vector<int>>(w, "sizes");
  c.p2s = get<std::vector<double>>(w, "p2");
  c.levels = get<std::vector<double>>(w, "levels");
  c.n_start = get<int>(d.at("extended"), "n_start");
  if (!d.at("distribution").is_null()) c.distribution = io::distribution_from(d.at("distribution"));
  const auto& m = d.at("mc");
  c.mc_n = get<std::int64_t>(m, "n");
  c.mc_seed = get<std::uint64_t>(m, "seed");
  const auto& o = d.at("output");
  c.out_dir = get<std::string>(o, "dir");
  c.name = get<std::string>(o, "name");
  c.tabular = get<bool>(o, "tabular");
  c.structured = get<bool>(o, "structured");
  c.threads = get<int>(d, "threads");
  return c;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

const char* to_string(Mode mode) { return kModes[static_cast<int>(mode)]; }

Mode parse_mode(const std::string& name) {
  for (int i = 0; i < 7; ++i) {
    if (name == kModes[i]) return static_cast<Mode>(i);
  }
  throw ConfigError("unknown mode '" + name + "'");
}

void RunConfig::validate() const {
  try {
    channel.validate();
    hpa.validate();
    eh.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  require(finite_pos(peak), "constraints.peak must be positive");
  require(finite_pos(avg_power), "constraints.avg_power must be positive");
  require(std::isfinite(e_req) && e_req >= 0.0, "constraints.e_req must be finite and >= 0");
  if (!states.empty()) {
    double total = 0.0;
    for (const auto& s : states) {
      require(std::isfinite(s.amplitude) && s.amplitude >= 0.0, "state amplitudes must be >= 0");
      require(s.prob >= 0.0 && s.prob <= 1.0, "state probabilities must lie in [0, 1]");
      total += s.prob;
    }
    require(std::abs(total - 1.0) <= 1e-9, "state probabilities must sum to 1");
  }
  require(finite_pos(dx) && dx <= peak / 10.0 * (1.0 + 1e-12), "solve.dx must lie in (0, peak / 10]");
  require(finite_pos(tol), "solve.tol must be positive");
  require(max_iter >= 1, "solve.max_iter must be >= 1");
  require(refine >= 0 && refine <= 4, "solve.refine must lie in [0, 4]");
  require(std::isfinite(prune_threshold) && prune_threshold >= 0.0, "solve.prune_threshold must be >= 0");
  require(std::isfinite(kkt_step) && kkt_step >= 0.0, "kkt.check_step must be >= 0");
  require(finite_pos(kkt_tol), "kkt.tol must be positive");
  try {
    numerics::QuadratureRule{}.with_nodes(kkt_nodes).validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("kkt.nodes: ") + e.what());
  }
  require(curve == "static" || curve == "ask" || curve == "onoff",
          "sweep.curve must be static, ask or onoff");
  require(n_points >= 2, "sweep.n_points must be >= 2");
  require(n_max >= 2, "sweep.n_max must be >= 2");
  require(!sizes.empty(), "sweep.sizes must not be empty");
  for (int n : sizes) require(n >= 2, "sweep.sizes entries must be >= 2");
  require(!p2s.empty(), "sweep.p2 must not be empty");
  for (double p : p2s) require(p > 0.0 && p <= 1.0, "sweep.p2 entries must lie in (0, 1]");
  for (double e : levels) require(std::isfinite(e) && e >= 0.0, "sweep.levels must be finite and >= 0");
  require(n_start >= 2, "extended.n_start must be >= 2");
  if (distribution) {
    try {
      distribution->validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("distribution: ") + e.what());
    }
  }
  require(mc_n >= 10000, "mc.n must be >= 10000");
  require(!out_dir.empty(), "output.dir must not be empty");
  require(!name.empty() && name.find('/') == std::string::npos, "output.name must be a plain file stem");
  require(threads >= 1, "threads must be >= 1");

  switch (mode) {
    case Mode::kExtended:
      require(states.size() == 2, "extended mode needs two entries in constraints.states");
      break;
    case Mode::kRegion:
      if (curve == "onoff") {
        require(states.size() == 2 && states[0].amplitude == 0.0,
                "on-off curve needs constraints.states = [{0, 1 - p2}, {a2, p2}]");
      }
      break;
    case Mode::kVerify:
      require(distribution.has_value(), "verify mode needs a distribution");
      break;
    default:
      break;
  }
}

RunConfig load_config(const std::string& text, const std::vector<std::string>& overrides) {
  json user;
  try {
    user = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!user.is_object()) throw ConfigError("config must be a JSON object");
  if (!user.contains("mode")) throw ConfigError("config must set 'mode'");
  json doc = to_doc(RunConfig{});
  overlay(doc, user, "");
  for (const auto& o : overrides) apply_override(doc, o);
  RunConfig cfg;
  try {
    cfg = from_doc(doc);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string dump_config(const RunConfig& cfg) { return to_doc(cfg).dump(2); }

}  // namespace swipt
