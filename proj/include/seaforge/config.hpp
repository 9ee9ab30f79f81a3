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

#ifndef SEAFORGE_CONFIG_HPP_
#define SEAFORGE_CONFIG_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seaforge/freqanalysis.hpp"
#include "seaforge/gaindesign.hpp"
#include "seaforge/params.hpp"
#include "seaforge/timesim.hpp"

namespace seaforge {

struct SimSettings {
  double dt = 5e-5;
  double duration = 1;
  double step_amplitude = 1;
  std::optional<double> current_limit;
  DisturbanceImpulse impulse;
};

struct RigidSettings {
  RigidActuator actuator;
  double natural_frequency_hz = 12;
  // (stiffness delay, damping delay) pairs, seconds
  std::vector<std::pair<double, double>> delay_combos = {
      {1e-3, 1e-3}, {15e-3, 1e-3}, {1e-3, 15e-3}, {15e-3, 15e-3}};
  bool velocity_filter = false;
  double duration = 2;
};

struct AnalysisSettings {
  double f_lo_hz = 0.01;
  double f_hi_hz = 1e4;
  int points_per_decade = 64;
  std::string target = "closed_loop";
  ImpedanceMode scenario = ImpedanceMode::ideal;
  TorqueConstantReading torque_constant = TorqueConstantReading::beta;
  bool with_load = false;
  std::vector<double> gs_grid = {0.4, 0.7, 1.0, 1.5, 2.0, 3.0};
  SimSettings sim;
  RigidSettings rigid;
};

struct OutputSettings {
  std::string directory = ".";
};

struct RunConfig {
  ActuatorParams actuator;
  DesignSpec design;  // natural_frequency_hz = 0 when explicit gains are given
  std::optional<ControllerGains> gains;
  LoopTiming timing;
  AnalysisSettings analysis;
  OutputSettings output;

  // Explicit gains, or the solved nominal gains with the gain scale applied.
  ControllerGains resolve_gains() const;
};

// Numbers may be given bare or as {"value": x, "unit": "..."}; units are
// not interpreted. Throws ConfigError or ParameterError naming the field.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

}  // namespace seaforge

#endif  // SEAFORGE_CONFIG_HPP_
