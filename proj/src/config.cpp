// Copyright 2026 The quadsmc Authors
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

#include "quadsmc/config.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ConfigError(path + ": " + why);
}

/// Object reader that remembers which keys were consumed so leftovers can
/// be reported as unknown.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) fail(at(key), "required key is missing");
    return *v;
  }

  double number(const std::string& key) { return as_number(require(key), at(key)); }

  double number_or(const std::string& key, double fallback) {
    const json* v = find(key);
    return v == nullptr ? fallback : as_number(*v, at(key));
  }

  std::string string_or(const std::string& key, std::string fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) fail(at(key), "expected a string");
    return v->get<std::string>();
  }

  bool boolean_or(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) fail(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::uint64_t unsigned_or(const std::string& key, std::uint64_t fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_number_unsigned()) {
      fail(at(key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(at(it.key()), "unknown key");
    }
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class E>
E parse_enum(const json& v, const std::string& path,
             std::initializer_list<std::pair<const char*, E>> options) {
  if (v.is_string()) {
    for (const auto& [name, value] : options) {
      if (v.get<std::string>() == name) return value;
    }
  }
  std::string expected;
  for (const auto& [name, value] : options) {
    expected += expected.empty() ? "" : ", ";
    expected += name;
  }
  fail(path, "expected one of: " + expected);
}

Channel parse_channel(const json& v, const std::string& path) {
  using C = Channel;
  return parse_enum<Channel>(v, path,
                             {{"phi", C::phi}, {"theta", C::theta},
                              {"psi", C::psi}, {"x", C::x}, {"y", C::y},
                              {"z", C::z}});
}

QuadParams parse_params(const json& j) {
  Obj o(j, "params");
  QuadParams p;
  const std::pair<const char*, double*> fields[] = {
      {"m", &p.m},         {"d", &p.d},         {"g", &p.g},
      {"Ix", &p.Ix},       {"Iy", &p.Iy},       {"Iz", &p.Iz},
      {"Jr", &p.Jr},       {"Kfax", &p.Kfax},   {"Kfay", &p.Kfay},
      {"Kfaz", &p.Kfaz},   {"Kftx", &p.Kftx},   {"Kfty", &p.Kfty},
      {"Kftz", &p.Kftz},   {"KF", &p.KF},       {"KM", &p.KM},
      {"beta0", &p.beta0}, {"beta1", &p.beta1}, {"beta2", &p.beta2},
      {"b_motor", &p.b_motor}};
  for (const auto& [name, dst] : fields) *dst = o.number(name);
  o.finish();
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    fail("params", e.what());
  }
  return p;
}

std::array<double, kChannelCount> per_loop(const json& v,
                                           const std::string& path) {
  std::array<double, kChannelCount> out{};
  if (v.is_number()) {
    out.fill(Obj::as_number(v, path));
    return out;
  }
  if (!v.is_array() || v.size() != kChannelCount) {
    fail(path, "expected a number or an array of 6 numbers");
  }
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    out[i] = Obj::as_number(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

GainSet parse_gains(const json& j) {
  Obj o(j, "gains");
  GainSet g;
  g.alpha = per_loop(o.require("alpha"), o.at("alpha"));
  g.k = per_loop(o.require("k"), o.at("k"));
  g.q = per_loop(o.require("q"), o.at("q"));
  o.finish();
  try {
    g.validate();
  } catch (const PreconditionError& e) {
    fail("gains", e.what());
  }
  return g;
}

ChannelProfile parse_profile(const json& j, const std::string& path) {
  Obj o(j, path);
  enum class Kind { zero, constant, ramp, sine };
  const Kind kind = parse_enum<Kind>(o.require("type"), o.at("type"),
                                     {{"zero", Kind::zero},
                                      {"constant", Kind::constant},
                                      {"ramp", Kind::ramp},
                                      {"sine", Kind::sine}});
  ChannelProfile out;
  switch (kind) {
    case Kind::zero:
      out = ZeroProfile{};
      break;
    case Kind::constant:
      out = ConstantProfile{o.number("value")};
      break;
    case Kind::ramp:
      out = RampProfile{o.number("slope")};
      break;
    case Kind::sine: {
      SineProfile s;
      s.amplitude = o.number_or("amplitude", s.amplitude);
      s.frequency = o.number_or("frequency", s.frequency);
      s.phase = o.number_or("phase", s.phase);
      out = s;
      break;
    }
  }
  o.finish();
  return out;
}

TrajectorySpec parse_trajectory(const json& j) {
  Obj o(j, "trajectory");
  TrajectorySpec spec;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const std::string name(kChannelNames[c]);
    if (const json* v = o.find(name)) {
      spec.channels[c] = parse_profile(*v, o.at(name));
    }
  }
  o.finish();
  try {
    spec.validate();
  } catch (const PreconditionError& e) {
    fail("trajectory", e.what());
  }
  return spec;
}

void parse_sim(const json& j, SimConfig& sim) {
  Obj o(j, "sim");
  sim.dt = o.number_or("dt", sim.dt);
  sim.t_end = o.number_or("t_end", sim.t_end);
  sim.stride = o.unsigned_or("stride", sim.stride);
  if (const json* v = o.find("initial_state")) {
    if (!v->is_array() || v->size() != kStateSize) {
      fail(o.at("initial_state"), "expected an array of 12 numbers");
    }
    for (std::size_t i = 0; i < kStateSize; ++i) {
      sim.initial_state[i] = Obj::as_number(
          (*v)[i], o.at("initial_state") + "[" + std::to_string(i) + "]");
    }
  }
  o.finish();
}

void parse_controller(const json& j, ControllerConfig& c) {
  Obj o(j, "controller");
  if (const json* v = o.find("mode")) {
    c.mode = parse_enum<ControllerMode>(
        *v, o.at("mode"),
        {{"attitude", ControllerMode::attitude},
         {"position", ControllerMode::position}});
  }
  if (const json* v = o.find("switching")) {
    c.switching.kind = parse_enum<SwitchingKind>(
        *v, o.at("switching"),
        {{"sign", SwitchingKind::sign},
         {"saturation", SwitchingKind::saturation}});
  }
  c.switching.epsilon = o.number_or("epsilon", c.switching.epsilon);
  if (!(c.switching.epsilon > 0.0)) fail(o.at("epsilon"), "must be > 0");
  o.finish();
}

std::map<std::string, double> parse_constants(const json& j) {
  Obj o(j, "constants");
  std::map<std::string, double> out;
  for (const std::string& name : constant_names()) {
    if (const json* v = o.find(name)) out[name] = Obj::as_number(*v, o.at(name));
  }
  o.finish();
  return out;
}

TuneSettings parse_tune(const json& j) {
  Obj o(j, "tune");
  TuneSettings t;
  t.budget = o.unsigned_or("budget", t.budget);
  t.seed = o.unsigned_or("seed", t.seed);
  if (const json* v = o.find("free")) {
    if (!v->is_array() || v->empty()) {
      fail(o.at("free"), "expected a non-empty array of gain groups");
    }
    t.free.clear();
    for (const json& g : *v) {
      const GainGroup grp = parse_enum<GainGroup>(
          g, o.at("free"),
          {{"alpha", GainGroup::alpha}, {"k", GainGroup::k}, {"q", GainGroup::q}});
      for (GainGroup seen : t.free) {
        if (seen == grp) fail(o.at("free"), "duplicate gain group");
      }
      t.free.push_back(grp);
    }
  }
  t.uniform = o.boolean_or("uniform", t.uniform);
  t.lower = o.number_or("lower", t.lower);
  t.upper = o.number_or("upper", t.upper);
  if (!(t.lower < t.upper)) fail("tune", "lower must be < upper");
  if (t.lower < 0.0) fail(o.at("lower"), "gains cannot be negative");
  if (const json* v = o.find("channels")) {
    if (!v->is_array() || v->empty()) {
      fail(o.at("channels"), "expected a non-empty array of channel names");
    }
    for (const json& c : *v) t.channels.push_back(parse_channel(c, o.at("channels")));
  }
  t.selftest = o.boolean_or("selftest", t.selftest);
  if (t.budget == 0) fail(o.at("budget"), "must be >= 1");
  o.finish();
  return t;
}

}  // namespace

const std::vector<std::string>& constant_names() {
  static const std::vector<std::string> names = {
      "a1", "a2", "a3", "a4",  "a5", "a6", "a7",
      "a8", "a9", "a10", "a11", "b1", "b2", "b3"};
  return names;
}

DerivedConstants RunConfig::constants() const {
  DerivedConstants c = derive_constants(params);
  double* slots[] = {&c.a1, &c.a2, &c.a3, &c.a4,  &c.a5, &c.a6, &c.a7,
                     &c.a8, &c.a9, &c.a10, &c.a11, &c.b1, &c.b2, &c.b3};
  const auto& names = constant_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = constant_overrides.find(names[i]);
    if (it != constant_overrides.end()) *slots[i] = it->second;
  }
  return c;
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }

  Obj o(doc, "$");
  RunConfig cfg;
  cfg.name = o.string_or("name", "");
  cfg.description = o.string_or("description", "");
  cfg.params = parse_params(o.require("params"));
  cfg.gains = parse_gains(o.require("gains"));
  cfg.trajectory = parse_trajectory(o.require("trajectory"));
  if (const json* v = o.find("sim")) parse_sim(*v, cfg.sim);
  if (const json* v = o.find("actuation")) {
    cfg.sim.actuation = parse_enum<ActuationMode>(
        *v, "actuation",
        {{"ideal", ActuationMode::ideal}, {"motor", ActuationMode::motor}});
  }
  if (const json* v = o.find("controller")) {
    parse_controller(*v, cfg.sim.controller);
  }
  if (const json* v = o.find("constants")) {
    cfg.constant_overrides = parse_constants(*v);
  }
  if (const json* v = o.find("output")) {
    Obj out(*v, "output");
    if (const json* dir = out.find("dir")) {
      if (!dir->is_string() || dir->get<std::string>().empty()) {
        fail(out.at("dir"), "expected a non-empty string");
      }
      cfg.output_dir = dir->get<std::string>();
    }
    out.finish();
  }
  if (const json* v = o.find("tune")) cfg.tune = parse_tune(*v);
  o.finish();

  try {
    cfg.sim.validate();
  } catch (const PreconditionError& e) {
    fail("sim", e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw ConfigError(path + ": read error");
  return parse_config(text.str());
}

TuneProblem make_tune_problem(const RunConfig& config) {
  TuneProblem p;
  p.sim = config.sim;
  p.params = config.params;
  p.constants = config.constants();
  p.trajectory = config.trajectory;
  p.base = config.gains;
  p.free = config.tune.free;
  p.uniform = config.tune.uniform;
  p.lower = config.tune.lower;
  p.upper = config.tune.upper;
  if (config.tune.channels.empty()) {
    p.channels = default_objective_channels(config.sim.controller.mode);
  } else {
    p.channels = {};
    for (Channel c : config.tune.channels) {
      p.channels[static_cast<std::size_t>(c)] = true;
    }
  }
  return p;
}

}  // namespace quadsmc
