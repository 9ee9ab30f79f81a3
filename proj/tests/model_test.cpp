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

#include <complex>
#include <numbers>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "seaforge/errors.hpp"
#include "seaforge/gaindesign.hpp"
#include "seaforge/model.hpp"

namespace seaforge {
namespace {

using Complex = std::complex<double>;

// Two-mass chain solved directly at s with unit motor current.
Complex plant_by_mass_balance(const ActuatorParams& p, Complex s) {
  const double k = p.joint_stiffness;
  Eigen::Matrix2cd a;
  a << p.motor_inertia * s * s + p.motor_damping * s + k, -k,
      -k, p.joint_inertia * s * s + p.joint_damping * s + k;
  const Eigen::Vector2cd x = a.lu().solve(Eigen::Vector2cd(p.current_to_torque, 0));
  return k * (x(0) - x(1));
}

// Full position loop solved as a linear system at s with q_des = 1.
// Unknowns: q_m, q_j, tau_k, i_m, tau_des.
Complex closed_loop_by_loop_equations(const ActuatorParams& p,
                                      const ControllerGains& g,
                                      const LoopTiming& t, Complex s) {
  auto lp = [&](double f) -> Complex {
    if (!t.filtered) return 1.0;
    const double a = 2 * std::numbers::pi * f;
    return a / (s + a);
  };
  auto delay = [&](double T) { return std::exp(-s * T); };
  const double k = p.joint_stiffness, beta = p.current_to_torque;
  const Complex c = g.k_tau + g.b_tau * lp(t.torque_filter_hz) * s;
  const Complex h = g.k_q * delay(t.stiffness_delay) +
                    g.b_q * delay(t.damping_delay) * lp(t.velocity_filter_hz) * s;

  Eigen::Matrix<Complex, 5, 5> a = Eigen::Matrix<Complex, 5, 5>::Zero();
  Eigen::Matrix<Complex, 5, 1> b = Eigen::Matrix<Complex, 5, 1>::Zero();
  a(0, 0) = p.motor_inertia * s * s + p.motor_damping * s;
  a(0, 2) = 1.0;
  a(0, 3) = -beta;
  a(1, 1) = p.joint_inertia * s * s + p.joint_damping * s;
  a(1, 2) = -1.0;
  a(2, 0) = -k;
  a(2, 1) = k;
  a(2, 2) = 1.0;
  a(3, 2) = c * delay(t.torque_delay);
  a(3, 3) = 1.0;
  a(3, 4) = -(1.0 / beta + c);
  a(4, 1) = h;
  a(4, 4) = 1.0;
  b(4) = g.k_q;
  return a.fullPivLu().solve(b)(1);
}

ControllerGains table_gains_f12() {
  ControllerGains g;
  g.k_q = 65;
  g.b_q = 0.46;
  g.k_tau = 1.18;
  g.b_tau = 0.057;
  return g;
}

TEST(ParamsTest, JointSpaceConstants) {
  const ActuatorParams p = ut_sea();
  EXPECT_NEAR(p.joint_stiffness, 350000 * 0.025 * 0.025, 1e-12);
  EXPECT_NEAR(p.current_to_torque, 0.9 * 8377.6 * 0.0276 * 0.025, 1e-12);
  EXPECT_NEAR(p.joint_stiffness, 218.75, 1e-12);
}

TEST(ParamsTest, RejectsBadFieldsByName) {
  RawActuatorParams r = ut_sea_raw();
  r.joint_inertia = 0;
  try {
    derive_joint_space(r);
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_EQ(e.field(), "joint_inertia");
  }
  r = ut_sea_raw();
  r.drivetrain_efficiency = 1.2;
  EXPECT_THROW(derive_joint_space(r), ParameterError);
}

TEST(ModelTest, SeaPlantMatchesMassBalance) {
  const ActuatorParams p = ut_sea();
  const auto pf = sea_plant(p);
  for (double w : {0.1, 3.0, 40.0, 125.0, 900.0, 1e4}) {
    const Complex s(0, w);
    const Complex expected = plant_by_mass_balance(p, s);
    EXPECT_NEAR(std::abs(pf.at(w) / expected - 1.0), 0, 1e-10) << w;
  }
}

TEST(ModelTest, SeaPlantLowFrequencyLimit) {
  ActuatorParams p = ut_sea();
  const double dc = p.current_to_torque * p.joint_damping /
                    (p.motor_damping + p.joint_damping);
  EXPECT_NEAR(std::abs(sea_plant(p).at(1e-7)), dc, 1e-9);
  // without joint damping the plant vanishes like beta I_j w / b_m
  p.joint_damping = 0;
  const double w = 1e-7;
  EXPECT_NEAR(std::abs(sea_plant(p).at(w)) /
                  (p.current_to_torque * p.joint_inertia * w / p.motor_damping),
              1.0, 1e-6);
}

TEST(ModelTest, LoadPlant) {
  const ActuatorParams p = ut_sea();
  const Complex s(0, 12.0);
  EXPECT_NEAR(std::abs(load_plant(p).at(12.0) -
                       1.0 / (p.joint_inertia * s * s + p.joint_damping * s)),
              0, 1e-15);
}

TEST(ModelTest, ClosedLoopMatchesLoopEquations) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = table_gains_f12();
  for (const LoopTiming& t : {LoopTiming::ideal(), LoopTiming::nominal_servo(),
                              LoopTiming::uniform(1e-3)}) {
    const auto pcl = closed_loop(p, g, t);
    const auto coeff = closed_loop_from_coefficients(p, g, t);
    for (double w : {0.5, 10.0, 75.0, 300.0, 2000.0}) {
      const Complex ref = closed_loop_by_loop_equations(p, g, t, Complex(0, w));
      EXPECT_NEAR(std::abs(pcl.at(w) / ref - 1.0), 0, 1e-10) << w;
      EXPECT_NEAR(std::abs(coeff.at(w) / ref - 1.0), 0, 1e-10) << w;
    }
  }
}

TEST(ModelTest, ClosedLoopUnitDcGain) {
  const ActuatorParams p = ut_sea();
  const auto pcl = closed_loop(p, table_gains_f12(), LoopTiming::nominal_servo());
  EXPECT_NEAR(std::abs(pcl.at(1e-8)), 1.0, 1e-6);
}

TEST(ModelTest, CharacteristicIsCoefficientTableTimesInverseStiffness) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = table_gains_f12();
  const auto d = closed_loop_characteristic(p, g);
  // Denominator of P_CL in cleared form, built from the mass/controller
  // polynomials: M(J + k) + Jk + beta J k C + k (1 + beta C) H.
  using Poly = Polynomial<double>;
  const double k = p.joint_stiffness, beta = p.current_to_torque;
  const Poly m{0, p.motor_damping, p.motor_inertia};
  const Poly j{0, p.joint_damping, p.joint_inertia};
  const Poly c{g.k_tau, g.b_tau};
  const Poly h{g.k_q, g.b_q};
  const Poly full = m * (j + Poly{k}) + k * j + (beta * k) * (j * c) +
                    k * ((Poly{1} + beta * c) * h);
  for (int i = 0; i <= 4; ++i)
    EXPECT_NEAR(d[i] * k / full[i] - 1, 0, 1e-12) << i;
}

TEST(ModelTest, OpenLoopIsLoopGain) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = table_gains_f12();
  const LoopTiming t = LoopTiming::nominal_servo();
  const auto l = open_loop(p, g, t);
  const auto pcl = closed_loop(p, g, t);
  const auto h = impedance_feedback(g, t);
  for (double w : {1.0, 60.0, 500.0}) {
    // P_CL = K_q P_C P_L / (1 + L) and L = P_C P_L H
    const Complex pcpl = l.at(w) / h.at(w);
    EXPECT_NEAR(std::abs(pcl.at(w) - g.k_q * pcpl / (1.0 + l.at(w))), 0, 1e-12);
  }
}

}  // namespace
}  // namespace seaforge
