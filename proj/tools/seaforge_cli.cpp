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

// seaforge command-line front end.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "seaforge/config.hpp"
#include "seaforge/errors.hpp"
#include "seaforge/freqanalysis.hpp"
#include "seaforge/gaindesign.hpp"
#include "seaforge/model.hpp"
#include "seaforge/report.hpp"
#include "seaforge/timesim.hpp"

namespace {

using nlohmann::json;
using namespace seaforge;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitSolver = 2;
constexpr int kExitValidation = 3;

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> target;
  std::optional<std::string> scenario;
  bool strict_delays = false;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("seaforge");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^[%l]%$ %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SEAFORGE_LOG"))
    spdlog::set_level(spdlog::level::from_str(env));
}

std::string out_path(const RunConfig& c, const Options& o, const std::string& name) {
  return (o.out ? *o.out : c.output.directory) + "/" + name;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_json(const std::string& path, const json& j) {
  write_atomic(path, j.dump(2) + "\n");
  spdlog::info("wrote {}", path);
}

void write_text(const std::string& path, const std::string& content) {
  write_atomic(path, content);
  spdlog::info("wrote {}", path);
}

ImpedanceScenario scenario_of(const RunConfig& c, const Options& o) {
  return {o.scenario ? parse_impedance_mode(*o.scenario) : c.analysis.scenario, c.timing};
}

SimConfig sim_config(const RunConfig& c, const Options& o) {
  SimConfig s;
  s.dt = c.analysis.sim.dt;
  s.duration = c.analysis.sim.duration;
  s.current_limit = c.analysis.sim.current_limit;
  s.timing = c.timing;
  s.strict_delays = o.strict_delays;
  return s;
}

void warn_delays(const SimTrace& tr) {
  for (const auto& d : tr.delays)
    if (std::abs(d.residual) >= 0.5 * tr.dt)
      spdlog::warn("delay {} s realized with residual {} s", d.requested, d.residual);
}

FrequencyModeld impedance_model(const RunConfig& c, const ControllerGains& g,
                                const ImpedanceScenario& sc) {
  auto z = impedance_coefficient_form(c.actuator, g, sc, c.analysis.torque_constant);
  return c.analysis.with_load ? impedance_with_load(z, c.actuator) : z;
}

void report_missing(const FrequencyResponseTable& t) {
  std::size_t missing = 0;
  for (const auto& v : t.values) missing += !v;
  if (missing) spdlog::warn("{} frequencies could not be evaluated", missing);
}

int cmd_gains(const RunConfig& c, const Options& o) {
  json j;
  ControllerGains g;
  if (c.gains) {
    g = *c.gains;
  } else {
    const ControllerGains nominal = solve_critically_damped(c.actuator, c.design);
    const auto r = criterion_residuals(c.actuator, nominal, c.design);
    j["residuals"] = {r(0), r(1), r(2), r(3)};
    g = c.design.gain_scale == 1 ? nominal : apply_gain_scale(nominal, c.design.gain_scale);
    j["natural_frequency_hz"] = c.design.natural_frequency_hz;
    j["validated_design"] = c.design.is_validated_design();
    if (!c.design.is_validated_design())
      spdlog::warn("damping ratios or frequency ratio outside the validated defaults");
  }
  j["gains"] = to_json(g);
  try {
    j["phase_margin"] = to_json(phase_margin(c.actuator, g, c.timing));
  } catch (const NoCrossoverError& e) {
    spdlog::warn("{}", e.what());
    j["phase_margin"] = nullptr;
  }
  write_json(out_path(c, o, "gains.json"), j);
  emit(j);
  return kExitOk;
}

int cmd_bode(const RunConfig& c, const Options& o) {
  const std::string target = o.target ? *o.target : c.analysis.target;
  const ControllerGains g = c.resolve_gains();
  auto model = [&] {
    if (target == "closed_loop") return closed_loop(c.actuator, g, c.timing);
    if (target == "open_loop") return open_loop(c.actuator, g, c.timing);
    if (target == "impedance") return impedance_model(c, g, scenario_of(c, o));
    throw ConfigError("unknown bode target '" + target + "'");
  }();
  const auto table = bode_sweep(model, c.analysis.f_lo_hz, c.analysis.f_hi_hz,
                                c.analysis.points_per_decade);
  report_missing(table);
  const std::string path = out_path(c, o, "bode_" + target + ".csv");
  write_text(path, bode_csv(table));
  emit({{"target", target}, {"rows", table.size()}, {"file", path}});
  return kExitOk;
}

int cmd_impedance(const RunConfig& c, const Options& o) {
  const ControllerGains g = c.resolve_gains();
  const ImpedanceScenario sc = scenario_of(c, o);
  const auto table = bode_sweep(impedance_model(c, g, sc), c.analysis.f_lo_hz,
                                c.analysis.f_hi_hz, c.analysis.points_per_decade);
  report_missing(table);
  const auto cmp = compare_impedance_forms(c.actuator, g, sc, c.analysis.torque_constant);
  if (!cmp.agree) spdlog::warn("{}", cmp.summary);

  const std::string stem = "impedance_" + to_string(sc.mode);
  const std::string csv = out_path(c, o, stem + ".csv");
  write_text(csv, bode_csv(table));
  json j = {{"scenario", to_string(sc.mode)},
            {"with_load", c.analysis.with_load},
            {"gains", to_json(g)},
            {"low_frequency_stiffness",
             low_frequency_asymptote(c.actuator, g, c.analysis.torque_constant)},
            {"high_frequency",
             to_json(high_frequency_asymptote(c.actuator, g, sc, c.analysis.torque_constant))},
            {"form_comparison", to_json(cmp)},
            {"file", csv}};
  write_json(out_path(c, o, stem + ".json"), j);
  emit(j);
  return kExitOk;
}

int cmd_step(const RunConfig& c, const Options& o) {
  const ControllerGains g = c.resolve_gains();
  SimConfig s = sim_config(c, o);
  s.input = PositionStep{c.analysis.sim.step_amplitude};
  const SimTrace tr = simulate_sea(c.actuator, g, s);
  warn_delays(tr);
  const std::string csv = out_path(c, o, "step_trace.csv");
  write_text(csv, trace_csv(tr));
  json j = {{"gains", to_json(g)},
            {"metrics", to_json(step_metrics(tr))},
            {"delays", delay_report(tr)},
            {"file", csv}};
  write_json(out_path(c, o, "step_metrics.json"), j);
  emit(j);
  return kExitOk;
}

int cmd_impulse(const RunConfig& c, const Options& o) {
  const ControllerGains g = c.resolve_gains();
  SimConfig s = sim_config(c, o);
  s.input = c.analysis.sim.impulse;
  const SimTrace tr = simulate_sea(c.actuator, g, s);
  warn_delays(tr);
  const std::string csv = out_path(c, o, "impulse_trace.csv");
  write_text(csv, trace_csv(tr));
  json j = {{"gains", to_json(g)},
            {"metrics", to_json(step_metrics(tr))},
            {"recovery", to_json(recovery_metrics(tr, c.analysis.sim.impulse))},
            {"delays", delay_report(tr)},
            {"file", csv}};
  write_json(out_path(c, o, "impulse_metrics.json"), j);
  emit(j);
  return kExitOk;
}

int cmd_distsim(const RunConfig& c, const Options& o) {
  const RigidSettings& r = c.analysis.rigid;
  const RigidGains g = rigid_critically_damped_gains(r.actuator, r.natural_frequency_hz);
  if (g.clamped) spdlog::warn("passive damping exceeds the critical value; damping gain clamped to 0");
  SimConfig s = sim_config(c, o);
  s.duration = r.duration;
  s.timing.filtered = r.velocity_filter;
  s.input = PositionStep{1.0};

  json runs = json::array();
  for (const auto& [stiff, damp] : r.delay_combos) {
    const SimTrace tr = simulate_rigid_distributed(r.actuator, g, stiff, damp, s);
    warn_delays(tr);
    const std::string csv = out_path(
        c, o, fmt::format("distsim_{:g}ms_{:g}ms.csv", stiff * 1e3, damp * 1e3));
    write_text(csv, trace_csv(tr));
    runs.push_back({{"stiffness_delay", stiff},
                    {"damping_delay", damp},
                    {"diverged", tr.diverged},
                    {"metrics", to_json(step_metrics(tr))},
                    {"delays", delay_report(tr)},
                    {"file", csv}});
  }
  json j = {{"stiffness_gain", g.stiffness},
            {"damping_gain", g.damping},
            {"damping_gain_clamped", g.clamped},
            {"runs", runs}};
  write_json(out_path(c, o, "distsim.json"), j);
  emit(j);
  return kExitOk;
}

int cmd_sweep_gs(const RunConfig& c, const Options& o) {
  if (c.gains)
    throw ConfigError("sweep-gs needs 'design.natural_frequency_hz', not explicit gains");
  const auto points = sweep_gain_scale(c.actuator, c.design.natural_frequency_hz,
                                       c.analysis.gs_grid, c.timing);
  for (const auto& p : points)
    if (!p.phase_margin_deg) spdlog::warn("no crossover at GS = {}", p.gain_scale);
  const std::string csv = out_path(c, o, "sweep_gs.csv");
  write_text(csv, gain_scale_csv(points));
  json rows = json::array();
  for (const auto& p : points)
    rows.push_back({{"gain_scale", p.gain_scale},
                    {"phase_margin_deg",
                     p.phase_margin_deg ? json(*p.phase_margin_deg) : json(nullptr)}});
  emit({{"points", rows}, {"file", csv}});
  return kExitOk;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  } catch (const ParameterError& e) {
    spdlog::error("{}: {}", e.field(), e.what());
    return kExitValidation;
  } catch (const SolverError& e) {
    spdlog::error("{} (last residual {})", e.what(), e.last_residual());
    return kExitSolver;
  } catch (const InfeasibleFrequencyError& e) {
    spdlog::error("{}", e.what());
    return kExitSolver;
  } catch (const NoCrossoverError& e) {
    spdlog::error("{}", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Series elastic actuator gain design and analysis"};
  app.require_subcommand(1);
  Options opt;

  using Handler = int (*)(const RunConfig&, const Options&);
  const std::pair<const char*, Handler> commands[] = {
      {"gains", cmd_gains},       {"bode", cmd_bode},       {"impedance", cmd_impedance},
      {"step", cmd_step},         {"impulse", cmd_impulse}, {"distsim", cmd_distsim},
      {"sweep-gs", cmd_sweep_gs}};
  const char* help[] = {"solve gains and report the phase margin",
                        "frequency response CSV of a loop or the impedance",
                        "impedance response, asymptotes and form cross-check",
                        "position step simulation",
                        "disturbance pulse simulation",
                        "rigid actuator with split stiffness/damping delays",
                        "phase margin over a gain-scale grid"};

  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--config", opt.config, "JSON configuration")->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--target", opt.target, "closed_loop, open_loop or impedance");
    sub->add_option("--scenario", opt.scenario,
                    "ideal, filter_only, delay_only or filter_and_delay");
    sub->add_flag("--strict-delays", opt.strict_delays,
                  "reject delays not representable in dt samples");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  for (const auto& [name, handler] : commands) {
    if (!app.got_subcommand(name)) continue;
    return guarded([&] { return handler(load_run_config(opt.config), opt); });
  }
  return kExitFailure;
}
