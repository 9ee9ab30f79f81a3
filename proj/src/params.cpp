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

#include "seaforge/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "seaforge/errors.hpp"

namespace seaforge {
namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0) || !std::isfinite(v))
    throw ParameterError(field, "must be positive and finite");
}

void require_nonnegative(double v, const char* field) {
  if (!(v >= 0) || !std::isfinite(v))
    throw ParameterError(field, "must be nonnegative and finite");
}

}  // namespace

ActuatorParams derive_joint_space(const RawActuatorParams& raw) {
  require_positive(raw.spring_stiffness_linear, "spring_stiffness_linear");
  require_positive(raw.pulley_radius, "pulley_radius");
  require_positive(raw.motor_inertia, "motor_inertia");
  require_positive(raw.motor_damping, "motor_damping");
  require_positive(raw.joint_inertia, "joint_inertia");
  require_nonnegative(raw.joint_damping, "joint_damping");
  require_positive(raw.gear_reduction, "gear_reduction");
  require_positive(raw.pulley_reduction, "pulley_reduction");
  require_positive(raw.ballscrew_lead, "ballscrew_lead");
  require_positive(raw.drivetrain_efficiency, "drivetrain_efficiency");
  if (raw.drivetrain_efficiency > 1)
    throw ParameterError("drivetrain_efficiency", "must lie in (0, 1]");
  require_positive(raw.motor_torque_constant, "motor_torque_constant");

  ActuatorParams p;
  static_cast<RawActuatorParams&>(p) = raw;
  p.joint_stiffness =
      raw.spring_stiffness_linear * raw.pulley_radius * raw.pulley_radius;
  p.current_to_torque = raw.drivetrain_efficiency * raw.gear_reduction *
                        raw.motor_torque_constant * raw.pulley_radius;
  return p;
}

void validate(const ActuatorParams& p) {
  require_positive(p.joint_stiffness, "joint_stiffness");
  require_positive(p.current_to_torque, "current_to_torque");
  require_positive(p.motor_inertia, "motor_inertia");
  require_positive(p.joint_inertia, "joint_inertia");
  require_nonnegative(p.motor_damping, "motor_damping");
  require_nonnegative(p.joint_damping, "joint_damping");
}

RawActuatorParams ut_sea_raw() {
  RawActuatorParams r;
  r.spring_stiffness_linear = 350000;
  r.pulley_radius = 0.025;
  r.motor_inertia = 0.225;
  r.motor_damping = 1.375;
  r.joint_inertia = 0.014;
  r.joint_damping = 0.1;
  r.gear_reduction = 8.3776e3;
  r.pulley_reduction = 4;
  r.ballscrew_lead = 0.003;
  r.drivetrain_efficiency = 0.9;
  r.motor_torque_constant = 0.0276;
  return r;
}

void validate(const ControllerGains& g) {
  require_nonnegative(g.k_q, "k_q");
  require_nonnegative(g.b_q, "b_q");
  require_nonnegative(g.k_tau, "k_tau");
  require_nonnegative(g.b_tau, "b_tau");
  require_positive(g.gain_scale, "gain_scale");
  if (g.natural_frequency_hz)
    require_positive(*g.natural_frequency_hz, "natural_frequency_hz");
}

double LoopTiming::velocity_filter_time_constant() const {
  return 1.0 / (2 * std::numbers::pi * velocity_filter_hz);
}

double LoopTiming::torque_filter_time_constant() const {
  return 1.0 / (2 * std::numbers::pi * torque_filter_hz);
}

double LoopTiming::effective_delay() const {
  return sample_period / 2 + extra_delay;
}

LoopTiming LoopTiming::ideal() {
  LoopTiming t;
  t.filtered = false;
  return t;
}

LoopTiming LoopTiming::nominal_servo() {
  LoopTiming t;
  t.torque_delay = 0.5e-3;
  t.damping_delay = 0.5e-3;
  t.stiffness_delay = 2e-3;
  return t;
}

LoopTiming LoopTiming::uniform(double delay) {
  LoopTiming t;
  t.torque_delay = t.stiffness_delay = t.damping_delay = delay;
  return t;
}

void validate(const LoopTiming& t) {
  require_nonnegative(t.torque_delay, "torque_delay");
  require_nonnegative(t.stiffness_delay, "stiffness_delay");
  require_nonnegative(t.damping_delay, "damping_delay");
  require_positive(t.velocity_filter_hz, "velocity_filter_hz");
  require_positive(t.torque_filter_hz, "torque_filter_hz");
  require_positive(t.sample_period, "sample_period");
  require_nonnegative(t.extra_delay, "extra_delay");
}

}  // namespace seaforge
