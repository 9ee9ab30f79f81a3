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

#include "seaforge/gaindesign.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "seaforge/errors.hpp"
#include "seaforge/model.hpp"

namespace seaforge {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Wraps an angle difference into (-180, 180].
double wrap_deg(double d) {
  d = std::fmod(d, 360.0);
  if (d <= -180.0) d += 360.0;
  if (d > 180.0) d -= 360.0;
  return d;
}

ControllerGains unpack(const Eigen::Vector4d& x) {
  ControllerGains g;
  g.k_q = x[0];
  g.b_q = x[1];
  g.k_tau = x[2];
  g.b_tau = x[3];
  return g;
}

// Structured starting point. The s^3 equation fixes B_tau, the s^0 equation
// gives K_q(K_tau) and the s^2 equation gives B_q(K_tau); the s^1 equation
// is then scanned over K_tau for a sign change.
Eigen::Vector4d initial_guess(const ActuatorParams& p, const DesignSpec& spec) {
  const Eigen::Vector4d c = target_coefficients(spec);
  const double k = p.joint_stiffness, beta = p.current_to_torque;
  const double im = p.motor_inertia, bm = p.motor_damping;
  const double ij = p.joint_inertia, bj = p.joint_damping;
  const double s = im * ij;

  const double b_tau = (c[0] * s - ij * bm - im * bj) / (ij * beta * k);
  if (!(b_tau > 0)) {
    throw InfeasibleFrequencyError(
        spec.natural_frequency_hz,
        "natural frequency " + std::to_string(spec.natural_frequency_hz) +
            " Hz needs a negative torque damping gain B_tau");
  }
  auto k_q = [&](double kt) { return c[3] * s / ((1 + beta * kt) * k); };
  auto b_q = [&](double kt) {
    return ((c[1] * s - bj * bm) / k - ij * (1 + beta * kt) - im) /
               (beta * b_tau) -
           bj;
  };
  auto r1 = [&](double kt) {
    const double lhs =
        (k * (bj + b_q(kt)) * (1 + beta * kt) + k * (bm + beta * b_tau * k_q(kt))) / s;
    return lhs / c[2] - 1;
  };

  constexpr int kGrid = 1200;
  double best = 1.0, best_abs = INFINITY;
  double prev_kt = 0, prev_r = 0;
  bool have_prev = false;
  for (int i = 0; i <= kGrid; ++i) {
    const double kt = std::pow(10.0, -6.0 + 12.0 * i / kGrid);
    if (b_q(kt) < 0) break;
    const double r = r1(kt);
    if (std::abs(r) < best_abs) {
      best_abs = std::abs(r);
      best = kt;
    }
    if (have_prev && (r > 0) != (prev_r > 0)) {
      best = std::sqrt(kt * prev_kt);
      break;
    }
    prev_kt = kt;
    prev_r = r;
    have_prev = true;
  }
  return {k_q(best), std::max(b_q(best), 0.0), best, b_tau};
}

}  // namespace

double DesignSpec::omega_n() const {
  return 2 * std::numbers::pi * natural_frequency_hz;
}

bool DesignSpec::is_validated_design() const {
  return zeta1 == 1 && zeta2 == 1 && omega_ratio == 1;
}

Eigen::Vector4d target_coefficients(const DesignSpec& spec) {
  const double w1 = spec.omega_n(), w2 = spec.omega_ratio * w1;
  const double z1 = spec.zeta1, z2 = spec.zeta2;
  return {2 * z1 * w1 + 2 * z2 * w2,
          w1 * w1 + w2 * w2 + 4 * z1 * z2 * w1 * w2,
          2 * z1 * w1 * w2 * w2 + 2 * z2 * w2 * w1 * w1,
          w1 * w1 * w2 * w2};
}

Eigen::Vector4d criterion_residuals(const ActuatorParams& p,
                                    const ControllerGains& g,
                                    const DesignSpec& spec) {
  const Eigen::Vector4d c = target_coefficients(spec);
  const double k = p.joint_stiffness, beta = p.current_to_torque;
  const double im = p.motor_inertia, bm = p.motor_damping;
  const double ij = p.joint_inertia, bj = p.joint_damping;
  const double s = im * ij;
  const double torque_p = 1 + beta * g.k_tau;

  Eigen::Vector4d lhs;
  lhs[0] = (ij * bm + im * bj + ij * beta * g.b_tau * k) / s;
  lhs[1] = (k * (ij * torque_p + im + beta * g.b_tau * (bj + g.b_q)) + bj * bm) / s;
  lhs[2] = (k * (bj + g.b_q) * torque_p + k * (bm + beta * g.b_tau * g.k_q)) / s;
  lhs[3] = torque_p * k * g.k_q / s;
  return lhs.cwiseQuotient(c) - Eigen::Vector4d::Ones();
}

ControllerGains solve_critically_damped(const ActuatorParams& p,
                                        const DesignSpec& spec,
                                        const NewtonOptions& options) {
  validate(p);
  if (!(spec.natural_frequency_hz > 0))
    throw ParameterError("natural_frequency_hz", "must be positive");
  if (!(spec.zeta1 > 0) || !(spec.zeta2 > 0))
    throw ParameterError("zeta", "damping ratios must be positive");
  if (!(spec.omega_ratio > 0))
    throw ParameterError("omega_ratio", "must be positive");

  const auto residual = [&](const Eigen::Vector4d& x) {
    return criterion_residuals(p, unpack(x), spec);
  };
  const auto result =
      damped_newton<double, 4>(residual, initial_guess(p, spec), options);
  if (result.status != NewtonStatus::converged) {
    throw SolverError("gain criterion solver did not converge at f_n = " +
                          std::to_string(spec.natural_frequency_hz) +
                          " Hz; residual " + std::to_string(result.residual_norm),
                      result.residual_norm);
  }
  if ((result.x.array() < 0).any()) {
    throw InfeasibleFrequencyError(
        spec.natural_frequency_hz,
        "criterion solution at f_n = " +
            std::to_string(spec.natural_frequency_hz) +
            " Hz has a negative gain");
  }
  ControllerGains g = unpack(result.x);
  g.natural_frequency_hz = spec.natural_frequency_hz;
  return g;
}

ControllerGains solve_critically_damped(const ActuatorParams& p,
                                        double natural_frequency_hz) {
  DesignSpec spec;
  spec.natural_frequency_hz = natural_frequency_hz;
  return solve_critically_damped(p, spec);
}

ControllerGains apply_gain_scale(const ControllerGains& nominal, double gs) {
  if (!(gs > 0) || !std::isfinite(gs))
    throw ParameterError("gain_scale", "must be positive");
  validate(nominal);
  ControllerGains g = nominal;
  g.k_tau = nominal.k_tau * gs;
  g.b_tau = nominal.b_tau * gs;
  g.k_q = nominal.k_q / gs;
  g.b_q = nominal.b_q / gs;
  g.gain_scale = nominal.gain_scale * gs;
  return g;
}

MarginReport phase_margin(const FrequencyModeld& loop,
                          const MarginOptions& opt) {
  if (!(opt.f_lo_hz > 0) || !(opt.f_hi_hz > opt.f_lo_hz))
    throw ParameterError("band", "need 0 < f_lo < f_hi");
  if (opt.points_per_decade < 1)
    throw ParameterError("points_per_decade", "must be at least 1");

  const double decades = std::log10(opt.f_hi_hz / opt.f_lo_hz);
  const int n = static_cast<int>(std::ceil(decades * opt.points_per_decade));
  auto freq = [&](double i) {
    return opt.f_lo_hz * std::pow(10.0, decades * i / n);
  };
  auto value = [&](double f) {
    const auto v = loop.at(2 * std::numbers::pi * f);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw EvaluationError(2 * std::numbers::pi * f,
                            "loop gain is not finite at " + std::to_string(f) + " Hz");
    return v;
  };

  MarginReport report;
  auto prev = value(freq(0));
  double prev_f = freq(0);
  double prev_arg = std::arg(prev) * kRadToDeg;
  double phase = prev_arg > 90.0 ? prev_arg - 360.0 : prev_arg;
  for (int i = 1; i <= n; ++i) {
    const double f = freq(i);
    const auto cur = value(f);
    const double cur_arg = std::arg(cur) * kRadToDeg;
    const double a = std::abs(prev) - 1, b = std::abs(cur) - 1;
    if (a == 0 || (a < 0) != (b < 0)) {
      // bisect on log f
      double lo = std::log(prev_f), hi = std::log(f);
      double flo = std::log(std::abs(prev));
      std::complex<double> at = prev;
      double fx = prev_f;
      for (int it = 0; it < 200 && a != 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        fx = std::exp(mid);
        at = value(fx);
        const double m = std::log(std::abs(at));
        if (std::abs(std::abs(at) - 1) < opt.magnitude_tolerance) break;
        if ((m < 0) == (flo < 0)) {
          lo = mid;
          flo = m;
        } else {
          hi = mid;
        }
        if (hi - lo < 1e-15) break;
      }
      const double crossing_phase =
          phase + wrap_deg(std::arg(at) * kRadToDeg - prev_arg);
      report.all_crossovers.push_back({fx, 180.0 + crossing_phase});
    }
    phase += wrap_deg(cur_arg - prev_arg);
    prev = cur;
    prev_f = f;
    prev_arg = cur_arg;
  }
  if (report.all_crossovers.empty())
    throw NoCrossoverError("no unity-gain crossover between " +
                           std::to_string(opt.f_lo_hz) + " and " +
                           std::to_string(opt.f_hi_hz) + " Hz");
  report.crossover_frequency_hz = report.all_crossovers.front().frequency_hz;
  report.phase_margin_deg = report.all_crossovers.front().phase_margin_deg;
  report.stable = true;
  for (const auto& c : report.all_crossovers)
    report.stable = report.stable && c.phase_margin_deg > 0;
  return report;
}

MarginReport phase_margin(const ActuatorParams& p, const ControllerGains& g,
                          const LoopTiming& t, const MarginOptions& options) {
  return phase_margin(open_loop(p, g, t), options);
}

DesignResult design_procedure(const ActuatorParams& p, const DesignSpec& spec,
                              const LoopTiming& t) {
  DesignResult out;
  const ControllerGains nominal = solve_critically_damped(p, spec);
  out.gains = spec.gain_scale == 1 ? nominal
                                   : apply_gain_scale(nominal, spec.gain_scale);
  out.margin = phase_margin(p, out.gains, t);
  out.validated_design = spec.is_validated_design();
  return out;
}

std::vector<GainScalePoint> sweep_gain_scale(const ActuatorParams& p,
                                             double natural_frequency_hz,
                                             std::span<const double> grid,
                                             const LoopTiming& t) {
  if (grid.empty()) throw ParameterError("gs_grid", "must not be empty");
  const ControllerGains nominal = solve_critically_damped(p, natural_frequency_hz);
  std::vector<GainScalePoint> out;
  out.reserve(grid.size());
  for (double gs : grid) {
    GainScalePoint pt{gs, std::nullopt};
    try {
      pt.phase_margin_deg =
          phase_margin(p, apply_gain_scale(nominal, gs), t).phase_margin_deg;
    } catch (const NoCrossoverError&) {
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace seaforge
