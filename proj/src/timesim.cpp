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

#include "seaforge/timesim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "seaforge/errors.hpp"

namespace seaforge {
namespace {

class DelayLine {
 public:
  DelayLine(int samples, double initial) : buf_(samples + 1, initial) {}

  // Pushes x and returns the sample from `samples` steps ago.
  double operator()(double x) {
    buf_[head_] = x;
    head_ = (head_ + 1) % buf_.size();
    return buf_[head_];
  }

 private:
  std::vector<double> buf_;
  std::size_t head_ = 0;
};

struct ServoClock {
  int steps_per_update = 1;
  double hold = 0;
  int total_steps = 0;
};

ServoClock servo_clock(const SimConfig& c) {
  if (!(c.dt > 0)) throw ParameterError("dt", "must be positive");
  if (!(c.duration > 0)) throw ParameterError("duration", "must be positive");
  validate(c.timing);
  const double ts = c.timing.sample_period;
  if (c.dt > ts * (1 + 1e-12))
    throw ConfigError("dt must not exceed the sample period");
  ServoClock clock;
  clock.steps_per_update = static_cast<int>(std::lround(ts / c.dt));
  if (std::abs(clock.steps_per_update * c.dt - ts) > 1e-9 * ts)
    throw ConfigError("sample_period must be an integer multiple of dt");
  clock.hold = clock.steps_per_update > 1 ? ts / 2 : 0;
  clock.total_steps = static_cast<int>(std::lround(c.duration / c.dt));
  return clock;
}

DelayRounding round_delay(double total, const SimConfig& c, const ServoClock& clock,
                          const char* name) {
  DelayRounding r;
  r.requested = total + c.timing.extra_delay;
  const double buffered = r.requested - clock.hold;
  r.samples = std::max(0, static_cast<int>(std::lround(buffered / c.dt)));
  r.residual = r.requested - (r.samples * c.dt + clock.hold);
  if (c.strict_delays && std::abs(r.residual) >= 0.5 * c.dt * (1 - 1e-9))
    throw ConfigError(std::string(name) + " is not representable in dt samples (residual " +
                      std::to_string(r.residual) + " s)");
  return r;
}

void validate(const SimConfig& c) {
  if (c.current_limit && !(*c.current_limit > 0))
    throw ParameterError("current_limit", "must be positive");
  if (const auto* d = std::get_if<DisturbanceImpulse>(&c.input)) {
    if (!(d->width > 0)) throw ParameterError("width", "impulse width must be positive");
    if (!(d->start >= 0)) throw ParameterError("start", "must be nonnegative");
  }
  if (const auto* s = std::get_if<Sinusoid>(&c.input))
    if (!(s->frequency_hz > 0)) throw ParameterError("frequency_hz", "must be positive");
}

double reference_of(const SimInput& in) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DisturbanceImpulse>) return v.setpoint;
        else return v.amplitude;
      },
      in);
}

double command_at(const SimInput& in, double t) {
  if (const auto* s = std::get_if<Sinusoid>(&in))
    return s->amplitude * std::sin(2 * std::numbers::pi * s->frequency_hz * t);
  return reference_of(in);
}

double disturbance_at(const SimInput& in, double t) {
  const auto* d = std::get_if<DisturbanceImpulse>(&in);
  return d && t >= d->start && t < d->start + d->width ? d->magnitude : 0.0;
}

void reserve(SimTrace& tr, std::size_t n) {
  for (auto* v : {&tr.t, &tr.q_des, &tr.q_j, &tr.q_m, &tr.dq_j, &tr.tau_k,
                  &tr.tau_des, &tr.tau_dist, &tr.i_m})
    v->reserve(n);
}

bool out_of_bounds(double q, double bound, std::initializer_list<double> states) {
  for (double s : states)
    if (!std::isfinite(s)) return true;
  return std::abs(q) > bound;
}

}  // namespace

double effective_delay(double sample_period, double extra_delay) {
  if (sample_period < 0) throw ParameterError("sample_period", "must be nonnegative");
  if (extra_delay < 0) throw ParameterError("extra_delay", "must be nonnegative");
  return sample_period / 2 + extra_delay;
}

DiscreteFilter discretize_filter(double cutoff_hz, double dt) {
  if (!(cutoff_hz > 0)) throw ParameterError("cutoff_hz", "must be positive");
  if (!(dt > 0)) throw ParameterError("dt", "must be positive");
  if (cutoff_hz > 0.5 / dt) throw ParameterError("cutoff_hz", "above the Nyquist frequency");
  const double a = 2 * std::numbers::pi * cutoff_hz;
  const double k = 2 / dt;
  return {a / (k + a), a / (k + a), (a - k) / (k + a)};
}

double LowPass::operator()(double x) {
  y_ = f_.b0 * x + f_.b1 * x_ - f_.a1 * y_;
  x_ = x;
  return y_;
}

Differentiator::Differentiator(std::optional<double> cutoff_hz, double period,
                               double previous)
    : filtered_(cutoff_hz.has_value()), period_(period), x_(previous) {
  if (!(period > 0)) throw ParameterError("period", "must be positive");
  if (filtered_) {
    // reuse the Nyquist check
    (void)discretize_filter(*cutoff_hz, period);
    const double a = 2 * std::numbers::pi * *cutoff_hz;
    const double k = 2 / period;
    c0_ = a * k / (k + a);
    c1_ = (a - k) / (k + a);
  }
}

double Differentiator::operator()(double x) {
  y_ = filtered_ ? c0_ * (x - x_) - c1_ * y_ : (x - x_) / period_;
  x_ = x;
  return y_;
}

std::vector<double> SimTrace::normalized() const {
  std::vector<double> y(q_j.size(), 0.0);
  if (reference != 0)
    std::transform(q_j.begin(), q_j.end(), y.begin(),
                   [this](double q) { return q / reference; });
  return y;
}

SimTrace simulate_sea(const ActuatorParams& p, const ControllerGains& g,
                      const SimConfig& config) {
  validate(p);
  validate(g);
  validate(config);
  const ServoClock clock = servo_clock(config);
  const LoopTiming& timing = config.timing;

  SimTrace tr;
  tr.dt = config.dt;
  tr.joint_stiffness = p.joint_stiffness;
  tr.reference = reference_of(config.input);
  tr.delays = {round_delay(timing.torque_delay, config, clock, "torque_delay"),
               round_delay(timing.stiffness_delay, config, clock, "stiffness_delay"),
               round_delay(timing.damping_delay, config, clock, "damping_delay")};
  const bool impulse = std::holds_alternative<DisturbanceImpulse>(config.input);
  const double q0 = impulse ? tr.reference : 0.0;
  const double bound = 100 * std::abs(impulse && q0 == 0 ? 1.0 : tr.reference);

  const double k = p.joint_stiffness, beta = p.current_to_torque;
  const double ts = timing.sample_period;
  DelayLine torque_line(tr.delays[0].samples, 0.0);
  DelayLine stiffness_line(tr.delays[1].samples, q0);
  DelayLine damping_line(tr.delays[2].samples, q0);
  auto cutoff = [&](double f) -> std::optional<double> {
    return timing.filtered ? std::optional<double>(f) : std::nullopt;
  };
  Differentiator velocity(cutoff(timing.velocity_filter_hz), ts, q0);
  Differentiator torque_rate(cutoff(timing.torque_filter_hz), ts, 0.0);

  double qm = q0, dqm = 0, qj = q0, dqj = 0;
  double q_des = 0, tau_des = 0, current = 0;
  reserve(tr, clock.total_steps + 1);

  for (int n = 0;; ++n) {
    const double t = n * config.dt;
    const double tau_k = k * (qm - qj);
    const double tau_meas = torque_line(tau_k);
    const double q_stiff = stiffness_line(qj);
    const double q_damp = damping_line(qj);
    if (n % clock.steps_per_update == 0) {
      q_des = command_at(config.input, t);
      const double v = velocity(q_damp);
      tau_des = g.k_q * (q_des - q_stiff) - g.b_q * v;
      const double e = tau_des - tau_meas;
      current = tau_des / beta + g.k_tau * e + g.b_tau * torque_rate(e);
      if (config.current_limit)
        current = std::clamp(current, -*config.current_limit, *config.current_limit);
    }
    const double tau_dist = disturbance_at(config.input, t);

    tr.t.push_back(t);
    tr.q_des.push_back(q_des);
    tr.q_j.push_back(qj);
    tr.q_m.push_back(qm);
    tr.dq_j.push_back(dqj);
    tr.tau_k.push_back(tau_k);
    tr.tau_des.push_back(tau_des);
    tr.tau_dist.push_back(tau_dist);
    tr.i_m.push_back(current);

    if (out_of_bounds(qj, bound, {qm, dqm, qj, dqj, current})) {
      tr.diverged = true;
      break;
    }
    if (n == clock.total_steps) break;

    const double ddqm = (beta * current - p.motor_damping * dqm - tau_k) / p.motor_inertia;
    const double ddqj = (tau_k + tau_dist - p.joint_damping * dqj) / p.joint_inertia;
    dqm += config.dt * ddqm;
    dqj += config.dt * ddqj;
    qm += config.dt * dqm;
    qj += config.dt * dqj;
  }
  return tr;
}

RigidGains rigid_critically_damped_gains(const RigidActuator& a,
                                         double natural_frequency_hz) {
  if (!(a.mass > 0)) throw ParameterError("mass", "must be positive");
  if (!(a.damping >= 0)) throw ParameterError("damping", "must be nonnegative");
  if (!(natural_frequency_hz > 0))
    throw ParameterError("natural_frequency_hz", "must be positive");
  const double wn = 2 * std::numbers::pi * natural_frequency_hz;
  RigidGains g;
  g.stiffness = a.mass * wn * wn;
  g.damping = 2 * a.mass * wn - a.damping;
  if (g.damping < 0) {
    g.damping = 0;
    g.clamped = true;
  }
  return g;
}

SimTrace simulate_rigid_distributed(const RigidActuator& a, const RigidGains& g,
                                    double stiffness_delay, double damping_delay,
                                    const SimConfig& config) {
  if (!(a.mass > 0)) throw ParameterError("mass", "must be positive");
  if (!(a.damping >= 0)) throw ParameterError("damping", "must be nonnegative");
  if (!(g.stiffness >= 0)) throw ParameterError("stiffness_gain", "must be nonnegative");
  if (!(g.damping >= 0)) throw ParameterError("damping_gain", "must be nonnegative");
  if (!(stiffness_delay >= 0)) throw ParameterError("stiffness_delay", "must be nonnegative");
  if (!(damping_delay >= 0)) throw ParameterError("damping_delay", "must be nonnegative");
  const auto* step = std::get_if<PositionStep>(&config.input);
  if (!step) throw ConfigError("rigid simulation supports step input only");
  validate(config);
  const ServoClock clock = servo_clock(config);

  SimTrace tr;
  tr.dt = config.dt;
  tr.reference = step->amplitude;
  tr.delays = {round_delay(stiffness_delay, config, clock, "stiffness_delay"),
               round_delay(damping_delay, config, clock, "damping_delay")};
  const double bound = 100 * std::abs(tr.reference);

  DelayLine position_line(tr.delays[0].samples, 0.0);
  DelayLine velocity_line(tr.delays[1].samples, 0.0);
  std::optional<LowPass> filter;
  if (config.timing.filtered)
    filter.emplace(discretize_filter(config.timing.velocity_filter_hz,
                                     config.timing.sample_period),
                   0.0);

  double x = 0, v = 0, force = 0;
  reserve(tr, clock.total_steps + 1);
  for (int n = 0;; ++n) {
    const double t = n * config.dt;
    const double x_meas = position_line(x);
    double v_meas = velocity_line(v);
    if (n % clock.steps_per_update == 0) {
      if (filter) v_meas = (*filter)(v_meas);
      force = g.stiffness * (step->amplitude - x_meas) - g.damping * v_meas;
    }

    tr.t.push_back(t);
    tr.q_des.push_back(step->amplitude);
    tr.q_j.push_back(x);
    tr.q_m.push_back(x);
    tr.dq_j.push_back(v);
    tr.tau_k.push_back(0.0);
    tr.tau_des.push_back(force);
    tr.tau_dist.push_back(0.0);
    tr.i_m.push_back(0.0);

    if (out_of_bounds(x, bound, {x, v, force})) {
      tr.diverged = true;
      break;
    }
    if (n == clock.total_steps) break;

    v += config.dt * (force - a.damping * v) / a.mass;
    x += config.dt * v;
  }
  return tr;
}

StepMetrics step_metrics(const SimTrace& trace) {
  StepMetrics m;
  m.diverged = trace.diverged;
  if (trace.diverged || trace.size() == 0) return m;
  if (trace.reference == 0) {
    m.overshoot_pct = 0;
    m.steady_state_error = 0;
    return m;
  }
  const auto y = trace.normalized();
  m.overshoot_pct = std::max(0.0, (*std::max_element(y.begin(), y.end()) - 1) * 100);
  m.steady_state_error = 1 - y.back();

  auto first_at_least = [&](double level) -> std::optional<double> {
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] >= level) return trace.t[i];
    return std::nullopt;
  };
  const auto t10 = first_at_least(0.1), t90 = first_at_least(0.9);
  if (t10 && t90) m.rise_time_10_90 = *t90 - *t10;

  std::size_t settle = 0;
  for (std::size_t i = y.size(); i-- > 0;) {
    if (std::abs(y[i] - 1) > 0.02) {
      settle = i + 1;
      break;
    }
  }
  if (settle < y.size()) m.settling_time_2pct = trace.t[settle];
  return m;
}

RecoveryMetrics recovery_metrics(const SimTrace& trace,
                                 const DisturbanceImpulse& impulse,
                                 double band_fraction) {
  if (!(band_fraction > 0)) throw ParameterError("band_fraction", "must be positive");
  RecoveryMetrics m;
  m.diverged = trace.diverged;
  if (trace.size() == 0) return m;
  const auto start = static_cast<std::size_t>(
      std::lower_bound(trace.t.begin(), trace.t.end(), impulse.start) - trace.t.begin());
  m.pre_disturbance = trace.q_j[start == 0 ? 0 : start - 1];
  m.band = band_fraction * std::abs(m.pre_disturbance);
  if (trace.diverged || start >= trace.size()) return m;

  std::size_t last_outside = start;
  bool left_band = false;
  for (std::size_t i = start; i < trace.size(); ++i) {
    const double dev = std::abs(trace.q_j[i] - m.pre_disturbance);
    m.peak_deviation = std::max(m.peak_deviation, dev);
    if (dev > m.band) {
      last_outside = i;
      left_band = true;
    }
  }
  m.final_deviation = std::abs(trace.q_j.back() - m.pre_disturbance);
  m.recovered = m.final_deviation <= m.band && last_outside + 1 < trace.size();
  if (m.recovered)
    m.recovery_time = left_band ? trace.t[last_outside + 1] - impulse.start : 0.0;
  return m;
}

}  // namespace seaforge
