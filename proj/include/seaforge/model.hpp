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

#ifndef SEAFORGE_MODEL_HPP_
#define SEAFORGE_MODEL_HPP_

#include <array>
#include <complex>

#include "seaforge/frequency_model.hpp"
#include "seaforge/params.hpp"

namespace seaforge {

// P_L(s) = 1 / (I_j s^2 + b_j s)
FrequencyModeld load_plant(const ActuatorParams& p);

// Spring torque per motor current,
//
//   P_F(s) = beta r(s) k / (I_m s^2 + b_m s + r(s) k),
//   r(s)   = (I_j s^2 + b_j s) / (I_j s^2 + b_j s + k),
//
// returned as one rational function with r(s) cleared.
FrequencyModeld sea_plant(const ActuatorParams& p);

// C(s) = K_tau + B_tau Q_taud(s) s
FrequencyModeld torque_compensator(const ControllerGains& g,
                                   const LoopTiming& t);

// Impedance feedback acting on q_j:
// K_q e^{-T_qs s} + B_q e^{-T_qd s} Q_qd(s) s
FrequencyModeld impedance_feedback(const ControllerGains& g,
                                   const LoopTiming& t);

// P_C = P_F (1/beta + C) / (1 + P_F C e^{-T_tau s})
FrequencyModeld torque_closed_loop(const ActuatorParams& p,
                                   const ControllerGains& g,
                                   const LoopTiming& t);

// L = P_C P_L (e^{-T_qd s} B_q Q_qd s + e^{-T_qs s} K_q)
FrequencyModeld open_loop(const ActuatorParams& p, const ControllerGains& g,
                          const LoopTiming& t);

// P_CL = K_q P_C P_L / (1 + L), composed from the same P_C P_L subtree as L.
FrequencyModeld closed_loop(const ActuatorParams& p, const ControllerGains& g,
                            const LoopTiming& t);

// The fourth-order coefficient table D_0..D_4 of P_CL at a point s. With
// delays and filters the coefficients depend on s; the form stays exact.
std::array<std::complex<double>, 5> closed_loop_coefficients(
    const ActuatorParams& p, const ControllerGains& g, const LoopTiming& t,
    std::complex<double> s);

// P_CL = K_q (1 + beta K_tau + beta B_tau Q_taud s) / sum_i D_i s^i,
// evaluated from the coefficient table.
FrequencyModeld closed_loop_from_coefficients(const ActuatorParams& p,
                                              const ControllerGains& g,
                                              const LoopTiming& t);

// Delay- and filter-free characteristic polynomial sum_i D_i s^i.
Polynomial<double> closed_loop_characteristic(const ActuatorParams& p,
                                              const ControllerGains& g);

}  // namespace seaforge

#endif  // SEAFORGE_MODEL_HPP_
