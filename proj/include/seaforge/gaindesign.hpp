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

#ifndef SEAFORGE_GAINDESIGN_HPP_
#define SEAFORGE_GAINDESIGN_HPP_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "seaforge/frequency_model.hpp"
#include "seaforge/newton.hpp"
#include "seaforge/params.hpp"

namespace seaforge {

// Target closed loop (s^2 + 2 z1 w1 s + w1^2)(s^2 + 2 z2 w2 s + w2^2) with
// w1 = 2 pi f_n and w2 = omega_ratio * w1.
struct DesignSpec {
  double natural_frequency_hz = 0;
  double zeta1 = 1;
  double zeta2 = 1;
  double omega_ratio = 1;
  double gain_scale = 1;

  double omega_n() const;
  // Only zeta1 = zeta2 = 1 and omega_ratio = 1 are validated against the
  // published gain table.
  bool is_validated_design() const;
};

// Monic target polynomial s^4 + c3 s^3 + c2 s^2 + c1 s + c0, returned as
// (c3, c2, c1, c0).
Eigen::Vector4d target_coefficients(const DesignSpec& spec);

// LHS/RHS - 1 of the four gain-criterion equations, ordered by descending
// power of s (s^3, s^2, s^1, s^0).
Eigen::Vector4d criterion_residuals(const ActuatorParams& p,
                                    const ControllerGains& g,
                                    const DesignSpec& spec);

ControllerGains solve_critically_damped(const ActuatorParams& p,
                                        const DesignSpec& spec,
                                        const NewtonOptions& options = {});
ControllerGains solve_critically_damped(const ActuatorParams& p,
                                        double natural_frequency_hz);

// K_tau, B_tau scaled up by gs; K_q, B_q scaled down by gs.
ControllerGains apply_gain_scale(const ControllerGains& nominal, double gs);

struct Crossover {
  double frequency_hz;
  double phase_margin_deg;
};

struct MarginReport {
  double crossover_frequency_hz = 0;  // lowest unity crossing
  double phase_margin_deg = 0;        // at the lowest crossing
  std::vector<Crossover> all_crossovers;
  bool stable = false;                // every crossing has positive margin
};

struct MarginOptions {
  double f_lo_hz = 0.01;
  double f_hi_hz = 1e4;
  int points_per_decade = 4096;
  double magnitude_tolerance = 1e-9;
};

// Phase margins of a loop gain at every |L(jw)| = 1 crossing in the band.
// Throws NoCrossoverError when there is none.
MarginReport phase_margin(const FrequencyModeld& loop,
                          const MarginOptions& options = {});
MarginReport phase_margin(const ActuatorParams& p, const ControllerGains& g,
                          const LoopTiming& t,
                          const MarginOptions& options = {});

struct DesignResult {
  ControllerGains gains;
  MarginReport margin;
  bool validated_design = true;
};

// Solve nominal gains, apply the gain scale, then measure the margin with
// the given delays and filters.
DesignResult design_procedure(const ActuatorParams& p, const DesignSpec& spec,
                              const LoopTiming& t);

struct GainScalePoint {
  double gain_scale;
  std::optional<double> phase_margin_deg;  // empty when no crossover
};

std::vector<GainScalePoint> sweep_gain_scale(const ActuatorParams& p,
                                             double natural_frequency_hz,
                                             std::span<const double> grid,
                                             const LoopTiming& t);

}  // namespace seaforge

#endif  // SEAFORGE_GAINDESIGN_HPP_
