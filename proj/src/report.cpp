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

#include "seaforge/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "seaforge/errors.hpp"

namespace seaforge {

using nlohmann::json;

std::string format_csv_number(double v) {
  if (std::isnan(v)) return {};
  return fmt::format("{:.17g}", v);
}

std::string bode_csv(const FrequencyResponseTable& table) {
  std::string out = "freq_hz,mag_db,phase_deg,re,im\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& v = table.values[i];
    out += format_csv_number(table.frequencies_hz[i]);
    out += ',' + format_csv_number(table.magnitude_db[i]);
    out += ',' + format_csv_number(table.phase_deg[i]);
    out += ',' + (v ? format_csv_number(v->real()) : std::string());
    out += ',' + (v ? format_csv_number(v->imag()) : std::string());
    out += '\n';
  }
  return out;
}

std::string trace_csv(const SimTrace& tr) {
  std::string out = "t,q_des,q_j,q_m,dq_j,tau_k,tau_des,i_m\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    for (const auto* col : {&tr.t, &tr.q_des, &tr.q_j, &tr.q_m, &tr.dq_j,
                            &tr.tau_k, &tr.tau_des, &tr.i_m}) {
      if (col != &tr.t) out += ',';
      out += format_csv_number((*col)[i]);
    }
    out += '\n';
  }
  return out;
}

std::string gain_scale_csv(const std::vector<GainScalePoint>& points) {
  std::string out = "gain_scale,phase_margin_deg\n";
  for (const auto& p : points) {
    out += format_csv_number(p.gain_scale) + ',';
    if (p.phase_margin_deg) out += format_csv_number(*p.phase_margin_deg);
    out += '\n';
  }
  return out;
}

json to_json(const ControllerGains& g) {
  json j = {{"k_q", g.k_q}, {"b_q", g.b_q}, {"k_tau", g.k_tau},
            {"b_tau", g.b_tau}, {"gain_scale", g.gain_scale}};
  if (g.natural_frequency_hz) j["natural_frequency_hz"] = *g.natural_frequency_hz;
  return j;
}

json to_json(const MarginReport& m) {
  json crossings = json::array();
  for (const auto& c : m.all_crossovers)
    crossings.push_back({{"frequency_hz", c.frequency_hz},
                         {"phase_margin_deg", c.phase_margin_deg}});
  return {{"crossover_frequency_hz", m.crossover_frequency_hz},
          {"phase_margin_deg", m.phase_margin_deg},
          {"all_crossovers", crossings},
          {"stable", m.stable}};
}

json to_json(const StepMetrics& m) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"overshoot_pct", opt(m.overshoot_pct)},
          {"rise_time_10_90", opt(m.rise_time_10_90)},
          {"settling_time_2pct", opt(m.settling_time_2pct)},
          {"steady_state_error", opt(m.steady_state_error)},
          {"diverged", m.diverged}};
}

json to_json(const RecoveryMetrics& m) {
  return {{"pre_disturbance", m.pre_disturbance},
          {"band", m.band},
          {"peak_deviation", m.peak_deviation},
          {"final_deviation", m.final_deviation},
          {"recovery_time", m.recovery_time ? json(*m.recovery_time) : json(nullptr)},
          {"recovered", m.recovered},
          {"diverged", m.diverged}};
}

json to_json(const HighFrequencyAsymptote& a) {
  json j = {{"kind", a.kind == HighFrequencyAsymptote::Kind::twist ? "twist" : "stiffness"},
            {"stiffness", a.stiffness}};
  if (a.kind == HighFrequencyAsymptote::Kind::twist) {
    j["twist_amplitude"] = a.twist_amplitude;
    j["twist_delay"] = a.twist_delay;
    j["lower_bound"] = a.lower_bound();
    j["upper_bound"] = a.upper_bound();
  }
  return j;
}

json to_json(const ImpedanceComparison& c) {
  return {{"points", c.points},
          {"max_relative_error", c.max_relative_error},
          {"tolerance", c.tolerance},
          {"agree", c.agree},
          {"torque_constant",
           c.reading == TorqueConstantReading::beta ? "beta" : "motor_constant"},
          {"mismatch_from_torque_constant", c.mismatch_from_torque_constant},
          {"summary", c.summary}};
}

json delay_report(const SimTrace& trace) {
  json out = json::array();
  for (const auto& d : trace.delays)
    out.push_back({{"requested", d.requested},
                   {"samples", d.samples},
                   {"residual", d.residual}});
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw Error("cannot write '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace seaforge
