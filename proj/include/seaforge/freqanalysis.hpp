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

#ifndef SEAFORGE_FREQANALYSIS_HPP_
#define SEAFORGE_FREQANALYSIS_HPP_

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "seaforge/frequency_model.hpp"
#include "seaforge/params.hpp"

namespace seaforge {

enum class ImpedanceMode { ideal, filter_only, delay_only, filter_and_delay };

std::string to_string(ImpedanceMode m);
// Accepts "ideal", "filter_only", "delay_only", "filter_and_delay".
ImpedanceMode parse_impedance_mode(const std::string& s);

struct ImpedanceScenario {
  ImpedanceMode mode = ImpedanceMode::ideal;
  LoopTiming timing;

  // Timing with the mode applied: delays zeroed unless the mode keeps them,
  // filters unity unless the mode keeps them.
  LoopTiming effective() const;
};

// Which constant the symbol k_tau of the printed impedance coefficients
// stands for.
enum class TorqueConstantReading { beta, motor_constant };

double torque_constant(const ActuatorParams& p, TorqueConstantReading r);

// Z(s) = tau_j / (-s q_j) built from the printed N_z0..N_z4 / D_z0..D_z5
// coefficient tables, delays kept exact.
FrequencyModeld impedance_coefficient_form(
    const ActuatorParams& p, const ControllerGains& g,
    const ImpedanceScenario& scenario,
    TorqueConstantReading reading = TorqueConstantReading::beta);

// Z(jw) obtained at each frequency by solving the loop equations (motor,
// spring, torque loop, impedance feedback) as a complex linear system.
// Evaluation throws EvaluationError when the system is singular.
FrequencyModeld impedance_structural_form(const ActuatorParams& p,
                                          const ControllerGains& g,
                                          const ImpedanceScenario& scenario);

// K_eff = K_q k_tau (1/beta + K_tau) / (1 + K_tau k_tau); Z ~ K_eff/(jw)
// as w -> 0 in every scenario.
double low_frequency_asymptote(
    const ActuatorParams& p, const ControllerGains& g,
    TorqueConstantReading reading = TorqueConstantReading::beta);

/*
 * High-frequency behaviour of Z:
 *
 *   stiffness  Z ~ stiffness / (jw)
 *   twist      Z ~ k (I_m + k_tau B_tau B_q e^{-jw T_qd}) / (jw I_m)
 *
 * For a twist, |Z jw| stays between k (I_m -/+ k_tau B_tau B_q) / I_m.
 */
struct HighFrequencyAsymptote {
  enum class Kind { stiffness, twist };
  Kind kind = Kind::stiffness;
  double stiffness = 0;        // center k or scaled k
  double twist_amplitude = 0;  // k k_tau B_tau B_q / I_m
  double twist_delay = 0;      // T_qd

  std::complex<double> at(double omega) const;
  double lower_bound() const { return std::abs(stiffness - twist_amplitude); }
  double upper_bound() const { return stiffness + twist_amplitude; }
};

HighFrequencyAsymptote high_frequency_asymptote(
    const ActuatorParams& p, const ControllerGains& g,
    const ImpedanceScenario& scenario,
    TorqueConstantReading reading = TorqueConstantReading::beta);

// Z_l = Z + I_j s + b_j
FrequencyModeld impedance_with_load(const FrequencyModeld& z,
                                    const ActuatorParams& p);
FrequencyModeld impedance_with_load(const FrequencyModeld& z,
                                    double load_inertia, double load_damping);

struct FrequencyResponseTable {
  std::vector<double> frequencies_hz;
  std::vector<double> magnitude_db;  // NaN where evaluation failed
  std::vector<double> phase_deg;     // unwrapped; NaN where evaluation failed
  std::vector<std::optional<std::complex<double>>> values;

  std::size_t size() const { return frequencies_hz.size(); }
};

// Log-spaced sweep including both end points.
FrequencyResponseTable bode_sweep(const FrequencyModeld& model, double f_lo_hz,
                                  double f_hi_hz, int points_per_decade);

// Least-squares slope of 20 log10 |H| against log10 f over [f_lo, f_hi].
double log_slope_db_per_decade(const FrequencyModeld& model, double f_lo_hz,
                               double f_hi_hz, int points_per_decade = 64);

struct ImpedanceComparison {
  std::size_t points = 0;
  double max_relative_error = 0;
  double tolerance = 0;
  bool agree = false;
  TorqueConstantReading reading = TorqueConstantReading::beta;
  // Disagreement disappears when k_tau is read as beta.
  bool mismatch_from_torque_constant = false;
  std::string summary;
};

// Coefficient form against structural form at `points` log-spaced
// frequencies. A disagreement is always described in `summary`.
ImpedanceComparison compare_impedance_forms(
    const ActuatorParams& p, const ControllerGains& g,
    const ImpedanceScenario& scenario, TorqueConstantReading reading,
    std::size_t points = 200, double f_lo_hz = 0.01, double f_hi_hz = 1e4,
    double tolerance = 1e-6);

}  // namespace seaforge

#endif  // SEAFORGE_FREQANALYSIS_HPP_
