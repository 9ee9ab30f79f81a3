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

#ifndef SEAFORGE_REPORT_HPP_
#define SEAFORGE_REPORT_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "seaforge/freqanalysis.hpp"
#include "seaforge/gaindesign.hpp"
#include "seaforge/timesim.hpp"

namespace seaforge {

// 17 significant digits; empty string for NaN.
std::string format_csv_number(double v);

// freq_hz,mag_db,phase_deg,re,im
std::string bode_csv(const FrequencyResponseTable& table);
// t,q_des,q_j,q_m,dq_j,tau_k,tau_des,i_m
std::string trace_csv(const SimTrace& trace);
// gain_scale,phase_margin_deg
std::string gain_scale_csv(const std::vector<GainScalePoint>& points);

nlohmann::json to_json(const ControllerGains& g);
nlohmann::json to_json(const MarginReport& m);
nlohmann::json to_json(const StepMetrics& m);
nlohmann::json to_json(const RecoveryMetrics& m);
nlohmann::json to_json(const HighFrequencyAsymptote& a);
nlohmann::json to_json(const ImpedanceComparison& c);
nlohmann::json delay_report(const SimTrace& trace);

// Writes to a sibling temp file, then renames over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace seaforge

#endif  // SEAFORGE_REPORT_HPP_
