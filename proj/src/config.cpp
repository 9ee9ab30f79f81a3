// Copyright 2026 The seaforge Authors
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

#include "seaforge/config.hpp"

#include <cmath>
#include <fstream>

#include "seaforge/errors.hpp"

namespace seaforge {
namespace {

using nlohmann::json;

const json* find(const json& obj, const std::string& key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_object()) {
    if (const json* inner = find(v, "value"); inner && inner->is_number())
      return inner->get<double>();
  }
  throw ConfigError("field '" + path + "' must be a number");
}

double required(const json& obj, const std::string& key, const std::string& block) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError("missing field '" + block + "." + key + "'");
  return as_number(*v, block + "." + key);
}

void optional_number(const json& obj, const std::string& key,
                     const std::string& block, double& out) {
  if (const json* v = find(obj, key)) out = as_number(*v, block + "." + key);
}

void optional_bool(const json& obj, const std::string& key, const std::string& block,
                   bool& out) {
  if (const json* v = find(obj, key)) {
    if (!v->is_boolean()) throw ConfigError("field '" + block + "." + key + "' must be a boolean");
    out = v->get<bool>();
  }
}

void optional_string(const json& obj, const std::string& key,
                     const std::string& block, std::string& out) {
  if (const json* v = find(obj, key)) {
    if (!v->is_string()) throw ConfigError("field '" + block + "." + key + "' must be a string");
    out = v->get<std::string>();
  }
}

const json& block(const json& root, const std::string& key, bool mandatory) {
  static const json empty = json::object();
  const json* b = find(root, key);
  if (!b) {
    if (mandatory) throw ConfigError("missing block '" + key + "'");
    return empty;
  }
  if (!b->is_object()) throw ConfigError("block '" + key + "' must be an object");
  return *b;
}

ActuatorParams parse_actuator(const json& a) {
  RawActuatorParams r;
  r.spring_stiffness_linear = required(a, "spring_stiffness_linear", "actuator");
  r.pulley_radius = required(a, "pulley_radius", "actuator");
  r.motor_inertia = required(a, "motor_inertia", "actuator");
  r.motor_damping = required(a, "motor_damping", "actuator");
  r.joint_inertia = required(a, "joint_inertia", "actuator");
  r.joint_damping = required(a, "joint_damping", "actuator");
  r.gear_reduction = required(a, "gear_reduction", "actuator");
  r.pulley_reduction = required(a, "pulley_reduction", "actuator");
  r.ballscrew_lead = required(a, "ballscrew_lead", "actuator");
  r.drivetrain_efficiency = required(a, "drivetrain_efficiency", "actuator");
  r.motor_torque_constant = required(a, "motor_torque_constant", "actuator");
  ActuatorParams p = derive_joint_space(r);

  // derived constants in the file are documentation; they must agree
  auto check = [&](const char* key, double derived) {
    if (const json* v = find(a, key)) {
      const double given = as_number(*v, std::string("actuator.") + key);
      if (std::abs(given - derived) > 1e-6 * std::abs(derived))
        throw ConfigError(std::string("field 'actuator.") + key +
                          "' disagrees with the value derived from the raw parameters");
    }
  };
  check("joint_stiffness", p.joint_stiffness);
  check("current_to_torque", p.current_to_torque);
  return p;
}

ControllerGains parse_gains(const json& g) {
  ControllerGains out;
  out.k_q = required(g, "k_q", "design.gains");
  out.b_q = required(g, "b_q", "design.gains");
  out.k_tau = required(g, "k_tau", "design.gains");
  out.b_tau = required(g, "b_tau", "design.gains");
  validate(out);
  return out;
}

LoopTiming parse_timing(const json& t) {
  LoopTiming out;
  optional_number(t, "torque_delay", "timing", out.torque_delay);
  optional_number(t, "stiffness_delay", "timing", out.stiffness_delay);
  optional_number(t, "damping_delay", "timing", out.damping_delay);
  optional_number(t, "velocity_filter_hz", "timing", out.velocity_filter_hz);
  optional_number(t, "torque_filter_hz", "timing", out.torque_filter_hz);
  optional_number(t, "sample_period", "timing", out.sample_period);
  optional_number(t, "extra_delay", "timing", out.extra_delay);
  optional_bool(t, "filtered", "timing", out.filtered);
  validate(out);
  return out;
}

AnalysisSettings parse_analysis(const json& a) {
  AnalysisSettings out;
  optional_number(a, "f_lo_hz", "analysis", out.f_lo_hz);
  optional_number(a, "f_hi_hz", "analysis", out.f_hi_hz);
  double ppd = out.points_per_decade;
  optional_number(a, "points_per_decade", "analysis", ppd);
  if (ppd < 1 || ppd != std::floor(ppd))
    throw ConfigError("field 'analysis.points_per_decade' must be a positive integer");
  out.points_per_decade = static_cast<int>(ppd);
  optional_string(a, "target", "analysis", out.target);
  std::string scenario = to_string(out.scenario);
  optional_string(a, "scenario", "analysis", scenario);
  out.scenario = parse_impedance_mode(scenario);
  std::string reading = "beta";
  optional_string(a, "torque_constant", "analysis", reading);
  if (reading == "beta") out.torque_constant = TorqueConstantReading::beta;
  else if (reading == "motor_constant") out.torque_constant = TorqueConstantReading::motor_constant;
  else throw ConfigError("field 'analysis.torque_constant' must be 'beta' or 'motor_constant'");
  optional_bool(a, "with_load", "analysis", out.with_load);

  if (const json* grid = find(a, "gs_grid")) {
    if (!grid->is_array() || grid->empty())
      throw ConfigError("field 'analysis.gs_grid' must be a nonempty array");
    out.gs_grid.clear();
    for (const auto& v : *grid) {
      const double gs = as_number(v, "analysis.gs_grid");
      if (!(gs > 0)) throw ConfigError("field 'analysis.gs_grid' entries must be positive");
      out.gs_grid.push_back(gs);
    }
  }

  const json& sim = block(a, "sim", false);
  optional_number(sim, "dt", "analysis.sim", out.sim.dt);
  optional_number(sim, "duration", "analysis.sim", out.sim.duration);
  optional_number(sim, "step_amplitude", "analysis.sim", out.sim.step_amplitude);
  if (const json* v = find(sim, "current_limit"))
    out.sim.current_limit = as_number(*v, "analysis.sim.current_limit");
  const json& imp = block(sim, "impulse", false);
  optional_number(imp, "magnitude", "analysis.sim.impulse", out.sim.impulse.magnitude);
  optional_number(imp, "start", "analysis.sim.impulse", out.sim.impulse.start);
  optional_number(imp, "width", "analysis.sim.impulse", out.sim.impulse.width);
  optional_number(imp, "setpoint", "analysis.sim.impulse", out.sim.impulse.setpoint);

  const json& rigid = block(a, "rigid", false);
  optional_number(rigid, "mass", "analysis.rigid", out.rigid.actuator.mass);
  optional_number(rigid, "damping", "analysis.rigid", out.rigid.actuator.damping);
  optional_number(rigid, "natural_frequency_hz", "analysis.rigid",
                  out.rigid.natural_frequency_hz);
  optional_number(rigid, "duration", "analysis.rigid", out.rigid.duration);
  optional_bool(rigid, "velocity_filter", "analysis.rigid", out.rigid.velocity_filter);
  if (const json* combos = find(rigid, "delay_combos")) {
    if (!combos->is_array() || combos->empty())
      throw ConfigError("field 'analysis.rigid.delay_combos' must be a nonempty array");
    out.rigid.delay_combos.clear();
    for (const auto& c : *combos) {
      if (!c.is_array() || c.size() != 2)
        throw ConfigError("field 'analysis.rigid.delay_combos' entries must be pairs");
      out.rigid.delay_combos.emplace_back(as_number(c[0], "analysis.rigid.delay_combos"),
                                          as_number(c[1], "analysis.rigid.delay_combos"));
    }
  }
  return out;
}

}  // namespace

ControllerGains RunConfig::resolve_gains() const {
  if (gains) return *gains;
  ControllerGains g = solve_critically_damped(actuator, design);
  return design.gain_scale == 1 ? g : apply_gain_scale(g, design.gain_scale);
}

RunConfig parse_run_config(const json& root) {
  if (!root.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig c;
  c.actuator = parse_actuator(block(root, "actuator", true));

  const json& design = block(root, "design", true);
  const json* fn = find(design, "natural_frequency_hz");
  const json* gains = find(design, "gains");
  if (fn && gains)
    throw ConfigError("fields 'design.natural_frequency_hz' and 'design.gains' are mutually exclusive");
  if (!fn && !gains)
    throw ConfigError("missing field 'design.natural_frequency_hz' (or 'design.gains')");
  if (fn) {
    c.design.natural_frequency_hz = as_number(*fn, "design.natural_frequency_hz");
    if (!(c.design.natural_frequency_hz > 0))
      throw ParameterError("natural_frequency_hz", "must be positive");
  } else {
    c.gains = parse_gains(*gains);
  }
  optional_number(design, "gain_scale", "design", c.design.gain_scale);
  if (!(c.design.gain_scale > 0)) throw ParameterError("gain_scale", "must be positive");
  optional_number(design, "zeta1", "design", c.design.zeta1);
  optional_number(design, "zeta2", "design", c.design.zeta2);
  optional_number(design, "omega_ratio", "design", c.design.omega_ratio);

  c.timing = parse_timing(block(root, "timing", false));
  c.analysis = parse_analysis(block(root, "analysis", false));
  optional_string(block(root, "output", false), "directory", "output", c.output.directory);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed configuration '" + path + "': " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& c) {
  const ActuatorParams& a = c.actuator;
  json j;
  j["actuator"] = {{"spring_stiffness_linear", a.spring_stiffness_linear},
                   {"pulley_radius", a.pulley_radius},
                   {"motor_inertia", a.motor_inertia},
                   {"motor_damping", a.motor_damping},
                   {"joint_inertia", a.joint_inertia},
                   {"joint_damping", a.joint_damping},
                   {"gear_reduction", a.gear_reduction},
                   {"pulley_reduction", a.pulley_reduction},
                   {"ballscrew_lead", a.ballscrew_lead},
                   {"drivetrain_efficiency", a.drivetrain_efficiency},
                   {"motor_torque_constant", a.motor_torque_constant},
                   {"joint_stiffness", a.joint_stiffness},
                   {"current_to_torque", a.current_to_torque}};
  json design = {{"gain_scale", c.design.gain_scale},
                 {"zeta1", c.design.zeta1},
                 {"zeta2", c.design.zeta2},
                 {"omega_ratio", c.design.omega_ratio}};
  if (c.gains)
    design["gains"] = {{"k_q", c.gains->k_q}, {"b_q", c.gains->b_q},
                       {"k_tau", c.gains->k_tau}, {"b_tau", c.gains->b_tau}};
  else
    design["natural_frequency_hz"] = c.design.natural_frequency_hz;
  j["design"] = design;
  const LoopTiming& t = c.timing;
  j["timing"] = {{"torque_delay", t.torque_delay},
                 {"stiffness_delay", t.stiffness_delay},
                 {"damping_delay", t.damping_delay},
                 {"velocity_filter_hz", t.velocity_filter_hz},
                 {"torque_filter_hz", t.torque_filter_hz},
                 {"sample_period", t.sample_period},
                 {"extra_delay", t.extra_delay},
                 {"filtered", t.filtered}};
  const AnalysisSettings& an = c.analysis;
  json sim = {{"dt", an.sim.dt},
              {"duration", an.sim.duration},
              {"step_amplitude", an.sim.step_amplitude},
              {"impulse",
               {{"magnitude", an.sim.impulse.magnitude},
                {"start", an.sim.impulse.start},
                {"width", an.sim.impulse.width},
                {"setpoint", an.sim.impulse.setpoint}}}};
  if (an.sim.current_limit) sim["current_limit"] = *an.sim.current_limit;
  json combos = json::array();
  for (const auto& [s, d] : an.rigid.delay_combos) combos.push_back({s, d});
  j["analysis"] = {
      {"f_lo_hz", an.f_lo_hz},
      {"f_hi_hz", an.f_hi_hz},
      {"points_per_decade", an.points_per_decade},
      {"target", an.target},
      {"scenario", to_string(an.scenario)},
      {"torque_constant",
       an.torque_constant == TorqueConstantReading::beta ? "beta" : "motor_constant"},
      {"with_load", an.with_load},
      {"gs_grid", an.gs_grid},
      {"sim", sim},
      {"rigid",
       {{"mass", an.rigid.actuator.mass},
        {"damping", an.rigid.actuator.damping},
        {"natural_frequency_hz", an.rigid.natural_frequency_hz},
        {"duration", an.rigid.duration},
        {"velocity_filter", an.rigid.velocity_filter},
        {"delay_combos", combos}}}};
  j["output"] = {{"directory", c.output.directory}};
  return j;
}

}  // namespace seaforge
