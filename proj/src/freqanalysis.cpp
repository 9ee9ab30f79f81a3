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

#include "seaforge/freqanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "seaforge/errors.hpp"

namespace seaforge {
namespace {

using Complex = std::complex<double>;
using Quasi = QuasiPolynomial<double>;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool keeps_delays(ImpedanceMode m) {
  return m == ImpedanceMode::delay_only || m == ImpedanceMode::filter_and_delay;
}

bool keeps_filters(ImpedanceMode m) {
  return m == ImpedanceMode::filter_only || m == ImpedanceMode::filter_and_delay;
}

std::vector<double> log_grid(double f_lo, double f_hi, int points_per_decade) {
  if (!(f_lo > 0) || !(f_hi > f_lo))
    throw ParameterError("band", "need 0 < f_lo < f_hi");
  if (points_per_decade < 1)
    throw ParameterError("points_per_decade", "must be at least 1");
  const double decades = std::log10(f_hi / f_lo);
  const int n = std::max(1, static_cast<int>(std::lround(decades * points_per_decade)));
  std::vector<double> f(n + 1);
  for (int i = 0; i <= n; ++i) f[i] = f_lo * std::pow(10.0, decades * i / n);
  f.back() = f_hi;
  return f;
}

}  // namespace

std::string to_string(ImpedanceMode m) {
  switch (m) {
    case ImpedanceMode::ideal: return "ideal";
    case ImpedanceMode::filter_only: return "filter_only";
    case ImpedanceMode::delay_only: return "delay_only";
    case ImpedanceMode::filter_and_delay: return "filter_and_delay";
  }
  return "ideal";
}

ImpedanceMode parse_impedance_mode(const std::string& s) {
  for (auto m : {ImpedanceMode::ideal, ImpedanceMode::filter_only,
                 ImpedanceMode::delay_only, ImpedanceMode::filter_and_delay})
    if (to_string(m) == s) return m;
  throw ParameterError("scenario", "unknown impedance scenario '" + s + "'");
}

LoopTiming ImpedanceScenario::effective() const {
  LoopTiming t = timing;
  if (!keeps_delays(mode))
    t.torque_delay = t.stiffness_delay = t.damping_delay = 0;
  t.filtered = keeps_filters(mode);
  return t;
}

double torque_constant(const ActuatorParams& p, TorqueConstantReading r) {
  return r == TorqueConstantReading::beta ? p.current_to_torque
                                          : p.motor_torque_constant;
}

FrequencyModeld impedance_coefficient_form(const ActuatorParams& p,
                                           const ControllerGains& g,
                                           const ImpedanceScenario& scenario,
                                           TorqueConstantReading reading) {
  validate(p);
  validate(g);
  validate(scenario.timing);
  const LoopTiming t = scenario.effective();
  const double k = p.joint_stiffness, beta = p.current_to_torque;
  const double im = p.motor_inertia, bm = p.motor_damping;
  const double kt = torque_constant(p, reading);
  const double tfv = t.filtered ? t.velocity_filter_time_constant() : 0.0;
  const double tft = t.filtered ? t.torque_filter_time_constant() : 0.0;
  const double ts = t.stiffness_delay, td = t.damping_delay, tt = t.torque_delay;
  const double kq = g.k_q, bq = g.b_q, ktau = g.k_tau, btau = g.b_tau;

  Quasi num;
  num.add_term(4, im * tft * tfv * beta * k);
  num.add_term(3, beta * k * (im * (tft + tfv) + tft * tfv * bm));
  const double a2 = tft + beta * (btau + ktau * tft);
  num.add_term(2, im * beta * k + beta * k * bm * (tft + tfv));
  num.add_term(2, k * kt * a2 * bq, td);
  num.add_term(2, k * kt * a2 * kq * tfv, ts);
  num.add_term(1, bm * beta * k);
  num.add_term(1, bq * k * kt * (1 + ktau * beta), td);
  num.add_term(1, kq * k * kt * (tfv + tft + beta * (btau + ktau * (tft + tfv))), ts);
  num.add_term(0, kq * k * kt * (1 + ktau * beta), ts);

  Quasi den;
  den.add_term(5, im * tft * tfv * beta);
  den.add_term(4, im * beta * (tfv + tft) + tfv * tft * beta * bm);
  den.add_term(3, beta * im + beta * bm * (tft + tfv) + tfv * k * beta * tft);
  den.add_term(3, tfv * k * beta * kt * (btau + ktau * tft), tt);
  den.add_term(2, beta * (bm + tft * k) + tfv * beta * k);
  den.add_term(2, beta * k * kt * (btau + ktau * tft) + tfv * beta * k * ktau * kt, tt);
  den.add_term(1, beta * k);
  den.add_term(1, beta * k * ktau * kt, tt);
  return FrequencyModeld::quasi_rational(std::move(num), std::move(den));
}

FrequencyModeld impedance_structural_form(const ActuatorParams& p,
                                          const ControllerGains& g,
                                          const ImpedanceScenario& scenario) {
  validate(p);
  validate(g);
  validate(scenario.timing);
  const LoopTiming t = scenario.effective();
  return FrequencyModeld::pointwise([p, g, t](const Complex& s) -> Complex {
    const double k = p.joint_stiffness, beta = p.current_to_torque;
    auto q = [&](double f) -> Complex {
      if (!t.filtered) return 1.0;
      const double a = 2 * std::numbers::pi * f;
      return a / (s + a);
    };
    const Complex c = g.k_tau + g.b_tau * q(t.torque_filter_hz) * s;
    const Complex h = g.k_q * Quasi::delay_factor(s, t.stiffness_delay) +
                      g.b_q * Quasi::delay_factor(s, t.damping_delay) *
                          q(t.velocity_filter_hz) * s;
    const Complex et = Quasi::delay_factor(s, t.torque_delay);

    // unknowns (q_m, tau_k, i_m, tau_des) with q_j = 1
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd b = Eigen::Vector4cd::Zero();
    a(0, 0) = p.motor_inertia * s * s + p.motor_damping * s;
    a(0, 1) = 1.0;
    a(0, 2) = -beta;
    a(1, 0) = -k;
    a(1, 1) = 1.0;
    b(1) = -k;
    a(2, 1) = c * et;
    a(2, 2) = 1.0;
    a(2, 3) = -(1.0 / beta + c);
    a(3, 3) = 1.0;
    b(3) = -h;

    const Eigen::FullPivLU<Eigen::Matrix4cd> lu(a);
    if (lu.rank() < 4)
      throw EvaluationError(s.imag(), "singular loop equations");
    const Eigen::Vector4cd x = lu.solve(b);
    const Complex z = -x(1) / s;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw EvaluationError(s.imag(), "non-finite impedance");
    return z;
  });
}

double low_frequency_asymptote(const ActuatorParams& p, const ControllerGains& g,
                               TorqueConstantReading reading) {
  const double kt = torque_constant(p, reading);
  return g.k_q * kt * (1.0 / p.current_to_torque + g.k_tau) /
         (1.0 + g.k_tau * kt);
}

std::complex<double> HighFrequencyAsymptote::at(double omega) const {
  const Complex jw(0, omega);
  Complex gain = stiffness;
  if (kind == Kind::twist)
    gain += twist_amplitude * std::polar(1.0, -omega * twist_delay);
  return gain / jw;
}

HighFrequencyAsymptote high_frequency_asymptote(
    const ActuatorParams& p, const ControllerGains& g,
    const ImpedanceScenario& scenario, TorqueConstantReading reading) {
  const double k = p.joint_stiffness;
  const double scaled = k * torque_constant(p, reading) * g.b_tau * g.b_q /
                        p.motor_inertia;
  HighFrequencyAsymptote out;
  out.stiffness = k;
  switch (scenario.mode) {
    case ImpedanceMode::ideal:
      out.stiffness = k + scaled;
      break;
    case ImpedanceMode::delay_only:
      out.kind = HighFrequencyAsymptote::Kind::twist;
      out.twist_amplitude = scaled;
      out.twist_delay = scenario.timing.damping_delay;
      break;
    case ImpedanceMode::filter_only:
    case ImpedanceMode::filter_and_delay:
      // the highest-order terms carry no delay
      break;
  }
  return out;
}

FrequencyModeld impedance_with_load(const FrequencyModeld& z,
                                    double load_inertia, double load_damping) {
  if (load_inertia == 0 && load_damping == 0) return z;
  return z + FrequencyModeld::rational(Polynomial<double>{load_damping, load_inertia},
                                       Polynomial<double>{1.0});
}

FrequencyModeld impedance_with_load(const FrequencyModeld& z,
                                    const ActuatorParams& p) {
  return impedance_with_load(z, p.joint_inertia, p.joint_damping);
}

FrequencyResponseTable bode_sweep(const FrequencyModeld& model, double f_lo_hz,
                                  double f_hi_hz, int points_per_decade) {
  FrequencyResponseTable table;
  table.frequencies_hz = log_grid(f_lo_hz, f_hi_hz, points_per_decade);
  const std::size_t n = table.frequencies_hz.size();
  table.magnitude_db.assign(n, kNaN);
  table.phase_deg.assign(n, kNaN);
  table.values.assign(n, std::nullopt);

  bool have_prev = false;
  double prev_arg = 0, phase = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex v;
    try {
      v = model.at(2 * std::numbers::pi * table.frequencies_hz[i]);
    } catch (const EvaluationError&) {
      continue;
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
    const double arg = std::arg(v) * 180.0 / std::numbers::pi;
    if (!have_prev) {
      phase = arg;
    } else {
      double d = std::fmod(arg - prev_arg, 360.0);
      if (d <= -180.0) d += 360.0;
      if (d > 180.0) d -= 360.0;
      phase += d;
    }
    have_prev = true;
    prev_arg = arg;
    table.values[i] = v;
    table.magnitude_db[i] = 20.0 * std::log10(std::abs(v));
    table.phase_deg[i] = phase;
  }
  return table;
}

double log_slope_db_per_decade(const FrequencyModeld& model, double f_lo_hz,
                               double f_hi_hz, int points_per_decade) {
  const auto f = log_grid(f_lo_hz, f_hi_hz, points_per_decade);
  Eigen::MatrixXd a(f.size(), 2);
  Eigen::VectorXd y(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    a(i, 0) = std::log10(f[i]);
    a(i, 1) = 1.0;
    y(i) = 20.0 * std::log10(std::abs(model.at(2 * std::numbers::pi * f[i])));
  }
  return a.colPivHouseholderQr().solve(y)(0);
}

ImpedanceComparison compare_impedance_forms(const ActuatorParams& p,
                                            const ControllerGains& g,
                                            const ImpedanceScenario& scenario,
                                            TorqueConstantReading reading,
                                            std::size_t points, double f_lo_hz,
                                            double f_hi_hz, double tolerance) {
  if (points < 2) throw ParameterError("points", "need at least 2");
  const auto structural = impedance_structural_form(p, g, scenario);
  auto max_error = [&](TorqueConstantReading r) {
    const auto coeff = impedance_coefficient_form(p, g, scenario, r);
    double worst = 0;
    const double decades = std::log10(f_hi_hz / f_lo_hz);
    for (std::size_t i = 0; i < points; ++i) {
      const double f = f_lo_hz * std::pow(10.0, decades * i / (points - 1));
      const double w = 2 * std::numbers::pi * f;
      const Complex zs = structural.at(w);
      const Complex zc = coeff.at(w);
      worst = std::max(worst, std::abs(zc - zs) / std::abs(zs));
    }
    return worst;
  };

  ImpedanceComparison out;
  out.points = points;
  out.tolerance = tolerance;
  out.reading = reading;
  out.max_relative_error = max_error(reading);
  out.agree = out.max_relative_error <= tolerance;

  std::ostringstream msg;
  msg.precision(3);
  msg << "scenario " << to_string(scenario.mode) << ", k_tau read as "
      << (reading == TorqueConstantReading::beta ? "beta" : "motor torque constant")
      << ": max relative difference " << out.max_relative_error << " over "
      << points << " frequencies";
  if (out.agree) {
    msg << " (agree within " << tolerance << ")";
  } else if (reading != TorqueConstantReading::beta &&
             max_error(TorqueConstantReading::beta) <= tolerance) {
    out.mismatch_from_torque_constant = true;
    msg << "; MISMATCH confined to the k_tau-carrying terms "
           "(N_z0, N_z1, N_z2 feedback parts; D_z1, D_z2, D_z3 delayed parts): "
           "reading k_tau as beta restores agreement";
  } else {
    msg << "; MISMATCH not explained by the k_tau reading";
  }
  out.summary = msg.str();
  return out;
}

}  // namespace seaforge
