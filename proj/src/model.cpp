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

#include "seaforge/model.hpp"

#include <numbers>

namespace seaforge {
namespace {

using Poly = Polynomial<double>;
using Complex = std::complex<double>;

// Q(s) or unity when filters are off.
FrequencyModeld filter(double cutoff_hz, bool on) {
  return on ? FrequencyModeld::low_pass(cutoff_hz) : FrequencyModeld::constant(1);
}

Complex filter_at(double cutoff_hz, bool on, Complex s) {
  if (!on) return 1.0;
  const double a = 2 * std::numbers::pi * cutoff_hz;
  return a / (s + a);
}

void validate_all(const ActuatorParams& p, const ControllerGains& g,
                  const LoopTiming& t) {
  validate(p);
  validate(g);
  validate(t);
}

}  // namespace

FrequencyModeld load_plant(const ActuatorParams& p) {
  validate(p);
  return FrequencyModeld::rational(
      Poly{1.0}, Poly{0.0, p.joint_damping, p.joint_inertia});
}

FrequencyModeld sea_plant(const ActuatorParams& p) {
  validate(p);
  const double k = p.joint_stiffness;
  const Poly joint{0.0, p.joint_damping, p.joint_inertia};
  const Poly motor{0.0, p.motor_damping, p.motor_inertia};
  // beta k J / (M (J + k) + J k)
  return FrequencyModeld::rational(p.current_to_torque * k * joint,
                                   motor * (joint + Poly{k}) + k * joint);
}

FrequencyModeld torque_compensator(const ControllerGains& g,
                                   const LoopTiming& t) {
  return FrequencyModeld::constant(g.k_tau) +
         g.b_tau * (filter(t.torque_filter_hz, t.filtered) *
                    FrequencyModeld::differentiator());
}

FrequencyModeld impedance_feedback(const ControllerGains& g,
                                   const LoopTiming& t) {
  return g.k_q * FrequencyModeld::delay(t.stiffness_delay) +
         g.b_q * (FrequencyModeld::delay(t.damping_delay) *
                  (filter(t.velocity_filter_hz, t.filtered) *
                   FrequencyModeld::differentiator()));
}

FrequencyModeld torque_closed_loop(const ActuatorParams& p,
                                   const ControllerGains& g,
                                   const LoopTiming& t) {
  validate_all(p, g, t);
  const auto plant = sea_plant(p);
  const auto c = torque_compensator(g, t);
  const auto forward =
      plant * (FrequencyModeld::constant(1.0 / p.current_to_torque) + c);
  const auto loop = plant * (c * FrequencyModeld::delay(t.torque_delay));
  return FrequencyModeld::feedback(forward, loop);
}

namespace {

FrequencyModeld torque_to_joint(const ActuatorParams& p,
                                const ControllerGains& g, const LoopTiming& t) {
  return torque_closed_loop(p, g, t) * load_plant(p);
}

}  // namespace

FrequencyModeld open_loop(const ActuatorParams& p, const ControllerGains& g,
                          const LoopTiming& t) {
  return torque_to_joint(p, g, t) * impedance_feedback(g, t);
}

FrequencyModeld closed_loop(const ActuatorParams& p, const ControllerGains& g,
                            const LoopTiming& t) {
  const auto pcpl = torque_to_joint(p, g, t);
  const auto loop = pcpl * impedance_feedback(g, t);
  return FrequencyModeld::feedback(g.k_q * pcpl, loop);
}

std::array<Complex, 5> closed_loop_coefficients(const ActuatorParams& p,
                                                const ControllerGains& g,
                                                const LoopTiming& t,
                                                Complex s) {
  const double k = p.joint_stiffness, beta = p.current_to_torque;
  const double im = p.motor_inertia, bm = p.motor_damping;
  const double ij = p.joint_inertia, bj = p.joint_damping;
  const Complex qt = filter_at(t.torque_filter_hz, t.filtered, s);
  const Complex qv = filter_at(t.velocity_filter_hz, t.filtered, s);
  const Complex et = QuasiPolynomial<double>::delay_factor(s, t.torque_delay);
  const Complex es = QuasiPolynomial<double>::delay_factor(s, t.stiffness_delay);
  const Complex ed = QuasiPolynomial<double>::delay_factor(s, t.damping_delay);

  std::array<Complex, 5> d;
  d[4] = im * ij / k;
  d[3] = (ij * bm + im * bj) / k + ij * beta * g.b_tau * qt * et;
  d[2] = ij * (1.0 + et * beta * g.k_tau) + im + bj * beta * g.b_tau * qt * et +
         beta * g.b_tau * g.b_q * ed * qv * qt + bj * bm / k;
  d[1] = bj * (1.0 + et * beta * g.k_tau) + bm + beta * g.b_tau * qt * g.k_q * es +
         ed * (1.0 + beta * g.k_tau) * g.b_q * qv;
  d[0] = es * (1.0 + beta * g.k_tau) * g.k_q;
  return d;
}

FrequencyModeld closed_loop_from_coefficients(const ActuatorParams& p,
                                              const ControllerGains& g,
                                              const LoopTiming& t) {
  validate_all(p, g, t);
  return FrequencyModeld::pointwise([p, g, t](const Complex& s) {
    const auto d = closed_loop_coefficients(p, g, t, s);
    Complex den = 0;
    for (int i = 4; i >= 0; --i) den = den * s + d[i];
    const double beta = p.current_to_torque;
    const Complex qt = filter_at(t.torque_filter_hz, t.filtered, s);
    return g.k_q * (1.0 + beta * g.k_tau + beta * g.b_tau * qt * s) / den;
  });
}

Poly closed_loop_characteristic(const ActuatorParams& p,
                                const ControllerGains& g) {
  const auto d = closed_loop_coefficients(p, g, LoopTiming::ideal(), 0.0);
  return Poly{d[0].real(), d[1].real(), d[2].real(), d[3].real(), d[4].real()};
}

}  // namespace seaforge
