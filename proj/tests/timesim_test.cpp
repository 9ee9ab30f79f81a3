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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "seaforge/errors.hpp"
#include "seaforge/gaindesign.hpp"
#include "seaforge/model.hpp"
#include "seaforge/timesim.hpp"

namespace seaforge {
namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 2 * std::numbers::pi;

// Controller at the integration rate, no delays, no filters.
SimConfig continuous_config(double dt = 5e-5, double duration = 0.6) {
  SimConfig c;
  c.dt = dt;
  c.duration = duration;
  c.timing = LoopTiming::ideal();
  c.timing.sample_period = dt;
  return c;
}

SimConfig servo_config(const LoopTiming& t, double duration = 1.0) {
  SimConfig c;
  c.duration = duration;
  c.timing = t;
  return c;
}

// Unit step response of num/den by RK4 on the controllable canonical form.
std::vector<double> rational_step(const RationalFunction<double>& h, double dt, int steps) {
  const auto m = h.monic();
  const int n = static_cast<int>(m.den.degree());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a.topRightCorner(n - 1, n - 1).setIdentity();
  for (int i = 0; i < n; ++i) a(n - 1, i) = -m.den[i];
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1;
  Eigen::RowVectorXd c(n);
  for (int i = 0; i < n; ++i) c(i) = m.num[i];
  auto f = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a * x + b; };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<double> y{0.0};
  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = f(x), k2 = f(x + dt / 2 * k1), k3 = f(x + dt / 2 * k2),
                          k4 = f(x + dt * k3);
    x += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    y.push_back(c * x);
  }
  return y;
}

// Least-squares a sin + b cos + c over the samples with t >= t0.
Complex sine_phasor(const SimTrace& tr, double f, double t0) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < tr.size(); ++i)
    if (tr.t[i] >= t0) idx.push_back(static_cast<int>(i));
  Eigen::MatrixXd a(idx.size(), 3);
  Eigen::VectorXd y(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double t = tr.t[idx[r]];
    a.row(r) << std::sin(kTwoPi * f * t), std::cos(kTwoPi * f * t), 1.0;
    y(r) = tr.q_j[idx[r]];
  }
  const Eigen::Vector3d x = a.colPivHouseholderQr().solve(y);
  return {x(0), x(1)};  // A sin(wt + phi) = A cos(phi) sin + A sin(phi) cos
}

TEST(TimingTest, EffectiveDelay) {
  EXPECT_DOUBLE_EQ(effective_delay(1e-3, 0), 0.5e-3);
  EXPECT_DOUBLE_EQ(effective_delay(1e-3, 15e-3), 15.5e-3);
  EXPECT_DOUBLE_EQ(effective_delay(0, 2e-3), 2e-3);
  EXPECT_THROW(effective_delay(-1, 0), ParameterError);
}

TEST(FilterTest, UnitDcGainAndNyquist) {
  for (double f : {1.0, 50.0, 100.0, 450.0}) {
    const DiscreteFilter d = discretize_filter(f, 1e-3);
    EXPECT_NEAR((d.b0 + d.b1) / (1 + d.a1), 1.0, 1e-14);
    LowPass lp(d, 0.0);
    double y = 0;
    for (int i = 0; i < 200000; ++i) y = lp(1.0);
    EXPECT_NEAR(y, 1.0, 1e-12);
  }
  EXPECT_THROW(discretize_filter(600, 1e-3), ParameterError);
  EXPECT_THROW(discretize_filter(0, 1e-3), ParameterError);
}

TEST(FilterTest, MatchesContinuousMagnitude) {
  const double f = 50, dt = 1e-4, probe = 5;
  const DiscreteFilter d = discretize_filter(f, dt);
  const Complex z = std::polar(1.0, -kTwoPi * probe * dt);  // z^-1
  const Complex h = (d.b0 + d.b1 * z) / (1.0 + d.a1 * z);
  const double a = kTwoPi * f;
  const Complex hc = a / (Complex(0, kTwoPi * probe) + a);
  EXPECT_LT(std::abs(20 * std::log10(std::abs(h) / std::abs(hc))), 0.1);
}

TEST(FilterTest, ImpulseResponseMonotone) {
  // Tustin puts a zero at z = -1: h[1] = b0 (1 - a1) exceeds h[0], then the
  // response decays geometrically.
  const DiscreteFilter d = discretize_filter(50, 1e-3);
  LowPass lp(d, 0.0);
  const double h0 = lp(1.0);
  EXPECT_DOUBLE_EQ(h0, d.b0);
  double prev = lp(0.0);
  EXPECT_NEAR(prev, d.b0 * (1 - d.a1), 1e-15);
  double y = lp(0.0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_GT(y, 0);
    EXPECT_LT(y, prev);
    prev = y;
    y = lp(0.0);
  }
}

TEST(SeaSimTest, SpringLawAndUnitDcGain) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = solve_critically_damped(p, 14);
  const SimTrace tr = simulate_sea(p, g, continuous_config(5e-5, 1.0));
  ASSERT_FALSE(tr.diverged);
  ASSERT_EQ(tr.size(), 20001u);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    EXPECT_EQ(tr.tau_k[i], p.joint_stiffness * (tr.q_m[i] - tr.q_j[i]));
    if (i) {
      EXPECT_NEAR(tr.t[i] - tr.t[i - 1], 5e-5, 1e-15);
    }
  }
  EXPECT_NEAR(tr.q_j.back(), 1.0, 0.005);
}

TEST(SeaSimTest, MatchesAnalyticStepResponse) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = solve_critically_damped(p, 14);
  const double dt = 5e-5;
  const SimTrace tr = simulate_sea(p, g, continuous_config(dt, 0.4));
  const auto h = closed_loop(p, g, LoopTiming::ideal()).to_rational();
  ASSERT_TRUE(h.has_value());
  const auto ref = rational_step(h->cancel_common_roots(), dt, static_cast<int>(tr.size()) - 1);
  double worst = 0;
  for (std::size_t i = 0; i < tr.size(); ++i)
    worst = std::max(worst, std::abs(tr.q_j[i] - ref[i]));
  EXPECT_LT(worst, 0.01);
}

TEST(SeaSimTest, RefinementChangesTraceLittle) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = solve_critically_damped(p, 14);
  const SimTrace coarse = simulate_sea(p, g, continuous_config(5e-5, 0.5));
  const SimTrace fine = simulate_sea(p, g, continuous_config(2.5e-5, 0.5));
  ASSERT_EQ(fine.size(), 2 * coarse.size() - 1);
  double worst = 0;
  for (std::size_t i = 0; i < coarse.size(); ++i)
    worst = std::max(worst, std::abs(coarse.q_j[i] - fine.q_j[2 * i]));
  EXPECT_LT(worst, 0.01);
}

TEST(SeaSimTest, SinusoidMatchesClosedLoop) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = solve_critically_damped(p, 12);
  const LoopTiming t = LoopTiming::nominal_servo();
  const auto pcl = closed_loop(p, g, t);
  for (double f : {1.0, 5.0}) {
    SimConfig c = servo_config(t, 4.0);
    c.input = Sinusoid{0.1, f};
    const SimTrace tr = simulate_sea(p, g, c);
    ASSERT_FALSE(tr.diverged);
    const Complex got = sine_phasor(tr, f, 2.0) / 0.1;
    const Complex want = pcl.at(kTwoPi * f);
    EXPECT_NEAR(std::abs(got) / std::abs(want), 1, 0.02) << f;
    EXPECT_NEAR(std::arg(got / want) * 180 / std::numbers::pi, 0, 2) << f;
  }
}

TEST(SeaSimTest, ZeroInducedOvershoot) {
  const ActuatorParams p = ut_sea();
  const StepMetrics m =
      step_metrics(simulate_sea(p, solve_critically_damped(p, 14), continuous_config()));
  ASSERT_FALSE(m.diverged);
  EXPECT_GT(*m.overshoot_pct, 0);
}

TEST(SeaSimTest, LargerGainScaleSlowerAndMoreOvershoot) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = solve_critically_damped(p, 14);
  const SimConfig c = servo_config(LoopTiming::uniform(1e-3), 1.5);
  const StepMetrics one = step_metrics(simulate_sea(p, g, c));
  const StepMetrics two = step_metrics(simulate_sea(p, apply_gain_scale(g, 2), c));
  ASSERT_FALSE(one.diverged);
  ASSERT_FALSE(two.diverged);
  EXPECT_GT(*two.overshoot_pct, *one.overshoot_pct);
  EXPECT_GT(*two.rise_time_10_90, *one.rise_time_10_90);
}

TEST(SeaSimTest, DisturbanceRecovery) {
  const ActuatorParams p = ut_sea();
  SimConfig c = servo_config(LoopTiming::nominal_servo(), 1.0);
  const DisturbanceImpulse pulse{10, 0.1, 0.01, 0.5};
  c.input = pulse;
  const SimTrace tr = simulate_sea(p, solve_critically_damped(p, 14), c);
  const RecoveryMetrics r = recovery_metrics(tr, pulse);
  EXPECT_FALSE(r.diverged);
  EXPECT_DOUBLE_EQ(r.pre_disturbance, 0.5);
  EXPECT_GT(r.peak_deviation, r.band);
  EXPECT_TRUE(r.recovered);
  EXPECT_LT(*r.recovery_time, 0.5);
}

TEST(SeaSimTest, FreeResponseDecays) {
  const ActuatorParams p = ut_sea();
  SimConfig c = servo_config(LoopTiming::nominal_servo(), 3.0);
  c.input = DisturbanceImpulse{10, 0.05, 0.01, 0.0};
  const SimTrace tr = simulate_sea(p, solve_critically_damped(p, 14), c);
  ASSERT_FALSE(tr.diverged);
  double peak = 0;
  for (double q : tr.q_j) peak = std::max(peak, std::abs(q));
  EXPECT_GT(peak, 0);
  EXPECT_LT(std::abs(tr.q_j.back()), 1e-6 * peak);
  EXPECT_LT(std::abs(tr.q_m.back()), 1e-6 * peak);
  EXPECT_LT(std::abs(tr.dq_j.back()), 1e-6 * peak);
}

TEST(SeaSimTest, ZeroAmplitudeStepStaysAtRest) {
  const ActuatorParams p = ut_sea();
  SimConfig c = servo_config(LoopTiming::nominal_servo(), 0.2);
  c.input = PositionStep{0.0};
  const SimTrace tr = simulate_sea(p, solve_critically_damped(p, 14), c);
  EXPECT_FALSE(tr.diverged);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    EXPECT_EQ(tr.q_j[i], 0);
    EXPECT_EQ(tr.i_m[i], 0);
  }
}

TEST(SeaSimTest, CurrentClamp) {
  const ActuatorParams p = ut_sea();
  SimConfig c = servo_config(LoopTiming::nominal_servo(), 0.3);
  c.current_limit = 0.5;
  const SimTrace tr = simulate_sea(p, solve_critically_damped(p, 14), c);
  double peak = 0;
  for (double i : tr.i_m) peak = std::max(peak, std::abs(i));
  EXPECT_LE(peak, 0.5);
  EXPECT_DOUBLE_EQ(peak, 0.5);
  c.current_limit = 0;
  EXPECT_THROW(simulate_sea(p, solve_critically_damped(p, 14), c), ParameterError);
}

TEST(SeaSimTest, DelayRounding) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = solve_critically_damped(p, 14);
  SimConfig c = servo_config(LoopTiming::nominal_servo(), 0.05);
  const SimTrace ok = simulate_sea(p, g, c);
  ASSERT_EQ(ok.delays.size(), 3u);
  EXPECT_EQ(ok.delays[1].samples, 30);  // 2 ms = 0.5 ms hold + 30 dt
  for (const auto& d : ok.delays) EXPECT_NEAR(d.residual, 0, 1e-15);

  c.timing.torque_delay = 0.2e-3;  // shorter than the hold
  const SimTrace lenient = simulate_sea(p, g, c);
  EXPECT_NEAR(lenient.delays[0].residual, -0.3e-3, 1e-15);
  c.strict_delays = true;
  EXPECT_THROW(simulate_sea(p, g, c), ConfigError);

  c.strict_delays = true;
  c.timing.torque_delay = 0.51e-3;  // residual 0.01 ms < dt / 2
  EXPECT_NO_THROW(simulate_sea(p, g, c));

  c.dt = 2e-3;
  EXPECT_THROW(simulate_sea(p, g, c), ConfigError);
}

TEST(SeaSimTest, RejectsZeroWidthImpulse) {
  const ActuatorParams p = ut_sea();
  SimConfig c = servo_config(LoopTiming::nominal_servo(), 0.1);
  c.input = DisturbanceImpulse{10, 0.05, 0.0, 0.5};
  EXPECT_THROW(simulate_sea(p, solve_critically_damped(p, 14), c), ParameterError);
}

TEST(SeaSimTest, Deterministic) {
  const ActuatorParams p = ut_sea();
  const ControllerGains g = solve_critically_damped(p, 14);
  const SimConfig c = servo_config(LoopTiming::nominal_servo(), 0.3);
  const SimTrace a = simulate_sea(p, g, c), b = simulate_sea(p, g, c);
  EXPECT_EQ(a.q_j, b.q_j);
  EXPECT_EQ(a.i_m, b.i_m);
}

TEST(RigidTest, CriticallyDampedGains) {
  const RigidActuator a{256, 1250};
  const RigidGains g = rigid_critically_damped_gains(a, 12);
  EXPECT_NEAR(g.stiffness, 1.455e6, 0.001e6);
  EXPECT_NEAR(g.damping, 37355, 5);
  const double disc = std::pow(a.damping + g.damping, 2) - 4 * a.mass * g.stiffness;
  EXPECT_NEAR(disc / (4 * a.mass * g.stiffness), 0, 1e-14);
  EXPECT_FALSE(g.clamped);
  EXPECT_NEAR(rigid_critically_damped_gains(a, 24).stiffness / g.stiffness, 4, 1e-14);

  const RigidActuator critical{256, 2 * std::sqrt(256 * g.stiffness)};
  EXPECT_NEAR(rigid_critically_damped_gains(critical, 12).damping, 0, 1e-9);
  const RigidGains over = rigid_critically_damped_gains({256, 1e6}, 12);
  EXPECT_EQ(over.damping, 0);
  EXPECT_TRUE(over.clamped);
}

TEST(RigidTest, NoForcingNoMotion) {
  SimConfig c = servo_config(LoopTiming::ideal(), 0.5);
  const SimTrace tr = simulate_rigid_distributed({256, 1250}, RigidGains{}, 1e-3, 1e-3, c);
  for (double x : tr.q_j) EXPECT_EQ(x, 0);
}

TEST(RigidTest, DampingDelayIsTheSensitiveOne) {
  const RigidActuator a{256, 1250};
  const RigidGains g = rigid_critically_damped_gains(a, 12);
  SimConfig c = servo_config(LoopTiming::ideal(), 2.0);
  const SimTrace stiff = simulate_rigid_distributed(a, g, 15e-3, 1e-3, c);
  EXPECT_FALSE(stiff.diverged);
  EXPECT_NEAR(stiff.q_j.back(), 1, 0.01);
  EXPECT_TRUE(simulate_rigid_distributed(a, g, 1e-3, 15e-3, c).diverged);
  EXPECT_TRUE(simulate_rigid_distributed(a, g, 15e-3, 15e-3, c).diverged);
  EXPECT_FALSE(simulate_rigid_distributed(a, g, 1e-3, 1e-3, c).diverged);
}

TEST(StepMetricsTest, PerfectAndCriticallyDamped) {
  SimTrace perfect;
  perfect.reference = 1;
  perfect.dt = 1e-3;
  for (int i = 0; i <= 100; ++i) {
    perfect.t.push_back(i * 1e-3);
    perfect.q_j.push_back(i == 0 ? 0.0 : 1.0);
  }
  const StepMetrics m = step_metrics(perfect);
  EXPECT_EQ(*m.overshoot_pct, 0);
  EXPECT_EQ(*m.steady_state_error, 0);

  SimTrace second;
  second.reference = 1;
  second.dt = 1e-3;
  const double w = 30;
  for (int i = 0; i <= 2000; ++i) {
    const double t = i * 1e-3;
    second.t.push_back(t);
    second.q_j.push_back(1 - (1 + w * t) * std::exp(-w * t));
  }
  const StepMetrics c = step_metrics(second);
  EXPECT_LT(*c.overshoot_pct, 0.1);
  // 10-90 rise of a critically damped pair is 3.358 / w
  EXPECT_NEAR(*c.rise_time_10_90, 3.358 / w, 2e-3);
  EXPECT_TRUE(c.settling_time_2pct.has_value());

  SimTrace diverged = second;
  diverged.diverged = true;
  const StepMetrics d = step_metrics(diverged);
  EXPECT_TRUE(d.diverged);
  EXPECT_FALSE(d.overshoot_pct.has_value());
}

}  // namespace
}  // namespace seaforge
