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

#ifndef SEAFORGE_TIMESIM_HPP_
#define SEAFORGE_TIMESIM_HPP_

#include <optional>
#include <variant>
#include <vector>

#include "seaforge/params.hpp"

namespace seaforge {

double effective_delay(double sample_period, double extra_delay);

// y_k = b0 x_k + b1 x_{k-1} - a1 y_{k-1}
struct DiscreteFilter {
  double b0 = 1;
  double b1 = 0;
  double a1 = 0;
};

// Tustin image of 2 pi f / (s + 2 pi f), no prewarping.
DiscreteFilter discretize_filter(double cutoff_hz, double dt);

class LowPass {
 public:
  LowPass(const DiscreteFilter& f, double initial) : f_(f), x_(initial), y_(initial) {}
  double operator()(double x);

 private:
  DiscreteFilter f_;
  double x_;
  double y_;
};

// Tustin image of a s / (s + a) with a = 2 pi f, or a backward difference
// when unfiltered. `previous` is the input value before the first call.
class Differentiator {
 public:
  Differentiator(std::optional<double> cutoff_hz, double period, double previous);
  double operator()(double x);

 private:
  bool filtered_;
  double period_;
  double c0_ = 0;
  double c1_ = 0;
  double x_;
  double y_ = 0;
};

struct PositionStep {
  double amplitude = 1;
};

// Torque pulse on the load while holding `setpoint`; the run starts at rest
// on the setpoint.
struct DisturbanceImpulse {
  double magnitude = 10;
  double start = 0.1;
  double width = 0.01;
  double setpoint = 0.5;
};

struct Sinusoid {
  double amplitude = 1;
  double frequency_hz = 1;
};

using SimInput = std::variant<PositionStep, DisturbanceImpulse, Sinusoid>;

struct SimConfig {
  double dt = 5e-5;
  double duration = 1;
  SimInput input = PositionStep{};
  std::optional<double> current_limit;
  LoopTiming timing;
  // reject any delay whose sample rounding leaves a residual >= dt / 2
  bool strict_delays = false;
};

struct DelayRounding {
  double requested = 0;
  int samples = 0;
  double residual = 0;  // requested - realized
};

struct SimTrace {
  std::vector<double> t;
  std::vector<double> q_des;
  std::vector<double> q_j;
  std::vector<double> q_m;
  std::vector<double> dq_j;
  std::vector<double> tau_k;
  std::vector<double> tau_des;
  std::vector<double> tau_dist;
  std::vector<double> i_m;

  double dt = 0;
  double joint_stiffness = 0;
  double reference = 0;  // step amplitude, setpoint or sine amplitude
  bool diverged = false;
  std::vector<DelayRounding> delays;

  std::size_t size() const { return t.size(); }
  // q_j / reference
  std::vector<double> normalized() const;
};

SimTrace simulate_sea(const ActuatorParams& p, const ControllerGains& g,
                      const SimConfig& config);

struct RigidActuator {
  double mass = 256;
  double damping = 1250;
};

struct RigidGains {
  double stiffness = 0;
  double damping = 0;
  bool clamped = false;  // damping gain would have been negative
};

RigidGains rigid_critically_damped_gains(const RigidActuator& a,
                                         double natural_frequency_hz);

// m x'' + b x' = K_s (x_des - x(t - T_stiff)) - B_d x'(t - T_damp)
// The velocity low-pass is applied only when config.timing.filtered.
SimTrace simulate_rigid_distributed(const RigidActuator& a, const RigidGains& g,
                                    double stiffness_delay, double damping_delay,
                                    const SimConfig& config);

struct StepMetrics {
  std::optional<double> overshoot_pct;
  std::optional<double> rise_time_10_90;
  std::optional<double> settling_time_2pct;
  std::optional<double> steady_state_error;  // 1 - final normalized value
  bool diverged = false;
};

StepMetrics step_metrics(const SimTrace& trace);

// Return of q_j to its value just before a disturbance pulse.
struct RecoveryMetrics {
  double pre_disturbance = 0;
  double band = 0;  // absolute half-width
  double peak_deviation = 0;
  double final_deviation = 0;
  std::optional<double> recovery_time;  // from pulse start to last band entry
  bool recovered = false;
  bool diverged = false;
};

RecoveryMetrics recovery_metrics(const SimTrace& trace,
                                 const DisturbanceImpulse& impulse,
                                 double band_fraction = 0.05);

}  // namespace seaforge

#endif  // SEAFORGE_TIMESIM_HPP_
