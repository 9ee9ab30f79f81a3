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

#ifndef SEAFORGE_PARAMS_HPP_
#define SEAFORGE_PARAMS_HPP_

#include <optional>

namespace seaforge {

// Actuator constants as listed on a data sheet (linear spring, drivetrain).
struct RawActuatorParams {
  double spring_stiffness_linear = 0;  // N/m
  double pulley_radius = 0;            // m
  double motor_inertia = 0;            // kg m^2, joint-reflected
  double motor_damping = 0;            // Nm s/rad, joint-reflected
  double joint_inertia = 0;            // kg m^2
  double joint_damping = 0;            // Nm s/rad
  double gear_reduction = 0;           // motor rad per actuator m
  double pulley_reduction = 0;
  double ballscrew_lead = 0;           // m/rev
  double drivetrain_efficiency = 0;    // (0, 1]
  double motor_torque_constant = 0;    // Nm/A
};

// Joint-space actuator model. `joint_stiffness` (k) and `current_to_torque`
// (beta) are derived; see derive_joint_space().
struct ActuatorParams : RawActuatorParams {
  double joint_stiffness = 0;    // Nm/rad
  double current_to_torque = 0;  // Nm/A
};

// k = k_lin r^2,  beta = eta N k_t r.  Throws ParameterError naming the
// first field out of domain.
ActuatorParams derive_joint_space(const RawActuatorParams& raw);

// Checks what the frequency models need: positive k, beta, I_m, I_j and
// nonnegative dampings.
void validate(const ActuatorParams& p);

// The bundled UT-SEA data sheet.
RawActuatorParams ut_sea_raw();
inline ActuatorParams ut_sea() { return derive_joint_space(ut_sea_raw()); }

struct ControllerGains {
  double k_q = 0;    // Nm/rad
  double b_q = 0;    // Nm s/rad
  double k_tau = 0;  // A/Nm
  double b_tau = 0;  // A s/Nm
  std::optional<double> natural_frequency_hz;
  double gain_scale = 1;
};

void validate(const ControllerGains& g);

// Feedback delays and filter cutoffs. Delays are total effective delays.
struct LoopTiming {
  double torque_delay = 0;       // T_tau, s
  double stiffness_delay = 0;    // T_qs, s
  double damping_delay = 0;      // T_qd, s
  double velocity_filter_hz = 50;
  double torque_filter_hz = 100;
  double sample_period = 1e-3;
  double extra_delay = 0;
  // false replaces both low-pass filters by unity
  bool filtered = true;

  double velocity_filter_time_constant() const;
  double torque_filter_time_constant() const;
  // sample_period / 2 + extra_delay
  double effective_delay() const;

  // No delays, unity filters.
  static LoopTiming ideal();
  // T_tau = T_qd = 0.5 ms, T_qs = 2 ms, 50 Hz / 100 Hz filters.
  static LoopTiming nominal_servo();
  // Same delay on all three loops, with 50 Hz / 100 Hz filters.
  static LoopTiming uniform(double delay);
};

void validate(const LoopTiming& t);

}  // namespace seaforge

#endif  // SEAFORGE_PARAMS_HPP_
