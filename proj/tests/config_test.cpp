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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "seaforge/config.hpp"
#include "seaforge/errors.hpp"
#include "seaforge/report.hpp"

namespace seaforge {
namespace {

using nlohmann::json;

const std::string kBundled = std::string(SEAFORGE_SOURCE_DIR) + "/configs/ut-sea.json";

json bundled() {
  std::ifstream in(kBundled);
  return json::parse(in);
}

std::string error_of(const json& j) {
  try {
    parse_run_config(j);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(ConfigTest, LoadsBundledFile) {
  const RunConfig c = load_run_config(kBundled);
  EXPECT_DOUBLE_EQ(c.actuator.joint_stiffness, 218.75);
  EXPECT_NEAR(c.actuator.current_to_torque, 5.2024896, 1e-12);
  EXPECT_EQ(c.design.natural_frequency_hz, 14);
  EXPECT_FALSE(c.gains.has_value());
  EXPECT_EQ(c.timing.stiffness_delay, 2e-3);
  EXPECT_EQ(c.timing.torque_delay, 0.5e-3);
  EXPECT_EQ(c.analysis.gs_grid.size(), 6u);
  EXPECT_EQ(c.analysis.rigid.delay_combos.size(), 4u);
  EXPECT_EQ(c.analysis.rigid.actuator.mass, 256);
}

TEST(ConfigTest, MissingFieldIsNamed) {
  json j = bundled();
  j["actuator"].erase("joint_inertia");
  EXPECT_NE(error_of(j).find("joint_inertia"), std::string::npos);
  EXPECT_THROW(parse_run_config(j), ConfigError);
}

TEST(ConfigTest, GainsAndFrequencyAreExclusive) {
  json j = bundled();
  j["design"]["gains"] = {{"k_q", 65}, {"b_q", 0.46}, {"k_tau", 1.18}, {"b_tau", 0.057}};
  EXPECT_THROW(parse_run_config(j), ConfigError);
  j["design"].erase("natural_frequency_hz");
  const RunConfig c = parse_run_config(j);
  ASSERT_TRUE(c.gains.has_value());
  EXPECT_EQ(c.resolve_gains().k_q, 65);
  j["design"].erase("gains");
  EXPECT_THROW(parse_run_config(j), ConfigError);
}

TEST(ConfigTest, UnitsAreDocumentationOnly) {
  json j = bundled();
  j["actuator"]["joint_inertia"] = {{"value", 0.014}, {"unit", "furlong"}};
  EXPECT_EQ(parse_run_config(j).actuator.joint_inertia, 0.014);
  j["actuator"]["joint_inertia"] = 0.014;
  EXPECT_EQ(parse_run_config(j).actuator.joint_inertia, 0.014);
  j["actuator"]["joint_inertia"] = "0.014";
  EXPECT_THROW(parse_run_config(j), ConfigError);
}

TEST(ConfigTest, DerivedConstantsMustAgree) {
  json j = bundled();
  j["actuator"]["joint_stiffness"] = 300;
  EXPECT_NE(error_of(j).find("joint_stiffness"), std::string::npos);
}

TEST(ConfigTest, BadValuesAreRejected) {
  json j = bundled();
  j["analysis"]["scenario"] = "sometimes";
  EXPECT_THROW(parse_run_config(j), ParameterError);
  j = bundled();
  j["timing"]["sample_period"] = 0;
  EXPECT_THROW(parse_run_config(j), ParameterError);
  j = bundled();
  j["analysis"]["gs_grid"] = json::array();
  EXPECT_THROW(parse_run_config(j), ConfigError);
}

TEST(ConfigTest, RoundTrip) {
  const RunConfig c = load_run_config(kBundled);
  const json once = to_json(c);
  const json twice = to_json(parse_run_config(json::parse(once.dump())));
  EXPECT_EQ(once, twice);
  EXPECT_EQ(once.dump(), twice.dump());
}

TEST(ConfigTest, GainScaleKeepsProducts) {
  json j = bundled();
  j["design"]["gain_scale"] = 2;
  const ControllerGains scaled = parse_run_config(j).resolve_gains();
  j["design"]["gain_scale"] = 1;
  const ControllerGains nominal = parse_run_config(j).resolve_gains();
  EXPECT_NEAR(scaled.k_q * scaled.k_tau / (nominal.k_q * nominal.k_tau), 1, 1e-15);
  EXPECT_EQ(scaled.gain_scale, 2);
}

TEST(ReportTest, NumberFormatting) {
  EXPECT_EQ(format_csv_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_csv_number(1.0), "1");
  EXPECT_EQ(format_csv_number(std::nan("")), "");
  EXPECT_EQ(std::stod(format_csv_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(ReportTest, CsvLayouts) {
  FrequencyResponseTable t;
  t.frequencies_hz = {1, 2};
  t.magnitude_db = {0, std::nan("")};
  t.phase_deg = {-1, std::nan("")};
  t.values = {std::complex<double>(1, 0), std::nullopt};
  EXPECT_EQ(bode_csv(t), "freq_hz,mag_db,phase_deg,re,im\n1,0,-1,1,0\n2,,,,\n");

  SimTrace tr;
  tr.t = {0};
  tr.q_des = {1};
  tr.q_j = {0};
  tr.q_m = {0};
  tr.dq_j = {0};
  tr.tau_k = {0};
  tr.tau_des = {2};
  tr.tau_dist = {0};
  tr.i_m = {0.5};
  EXPECT_EQ(trace_csv(tr), "t,q_des,q_j,q_m,dq_j,tau_k,tau_des,i_m\n0,1,0,0,0,0,2,0.5\n");

  const std::vector<GainScalePoint> pts{{0.5, 30.0}, {2.0, std::nullopt}};
  EXPECT_EQ(gain_scale_csv(pts), "gain_scale,phase_margin_deg\n0.5,30\n2,\n");
}

TEST(ReportTest, JsonRoundTrip) {
  MarginReport m;
  m.crossover_frequency_hz = 12.715136593037046;
  m.phase_margin_deg = 1.0 / 3.0;
  m.all_crossovers = {{m.crossover_frequency_hz, m.phase_margin_deg}};
  m.stable = true;
  const json j = to_json(m);
  const json back = json::parse(j.dump());
  EXPECT_EQ(back["phase_margin_deg"].get<double>(), m.phase_margin_deg);
  EXPECT_EQ(back["crossover_frequency_hz"].get<double>(), m.crossover_frequency_hz);
  EXPECT_EQ(back, j);

  StepMetrics s;
  s.overshoot_pct = 15.657;
  s.diverged = false;
  const json sj = json::parse(to_json(s).dump());
  EXPECT_EQ(sj["overshoot_pct"].get<double>(), 15.657);
  EXPECT_TRUE(sj["rise_time_10_90"].is_null());
}

TEST(ReportTest, AtomicWrite) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "seaforge_report_test";
  fs::remove_all(dir);
  const std::string path = (dir / "nested" / "out.csv").string();
  write_atomic(path, "a,b\n");
  write_atomic(path, "c,d\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "c,d\n");
  EXPECT_FALSE(fs::exists(path + ".tmp"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace seaforge
