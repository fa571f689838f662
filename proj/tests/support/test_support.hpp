// Copyright 2026 The smarthome-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <smarthome/engine.hpp>
#include <smarthome/envsim.hpp>

namespace smarthome::testing {

inline std::filesystem::path source_dir()
{
  return SMARTHOME_SOURCE_DIR;
}

/// Fresh directory under the system temp dir, removed on destruction.
class temp_dir
{
public:
  explicit temp_dir(const std::string& p_tag)
  {
    std::random_device entropy;
    m_path = std::filesystem::temp_directory_path() /
             ("smarthome-" + p_tag + "-" + std::to_string(entropy()));
    std::filesystem::create_directories(m_path);
  }
  ~temp_dir()
  {
    std::error_code ec;
    std::filesystem::remove_all(m_path, ec);
  }
  temp_dir(const temp_dir&) = delete;
  temp_dir& operator=(const temp_dir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const noexcept
  {
    return m_path;
  }
  [[nodiscard]] std::filesystem::path operator/(const std::string& p_name) const
  {
    return m_path / p_name;
  }

private:
  std::filesystem::path m_path;
};

inline std::string slurp(const std::filesystem::path& p_path)
{
  std::ifstream in(p_path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void spit(const std::filesystem::path& p_path, const std::string& p_text)
{
  std::ofstream out(p_path, std::ios::binary | std::ios::trunc);
  out << p_text;
}

// Independent oracles written straight from the rule statements. They share
// no code with the engine.
namespace oracle {

/// Reference LED branch chain with truncating int() conversion.
inline int reference_led(double lux)
{
  if (lux > 2000) {
    return 0;
  }
  if (lux < 100) {
    return 100;
  }
  return static_cast<int>(std::trunc((2000 - lux) / 20));
}

/// Fan tiers at default thresholds, read from the highest tier
/// down. Above 30 C without the humidity condition the 70 % tier holds.
inline int reference_fan(double temp_c, double humidity_pct)
{
  if (temp_c > 30 && humidity_pct > 70) {
    return 100;
  }
  if (temp_c > 27) {
    return 70;
  }
  if (temp_c > 24) {
    return 40;
  }
  return 0;
}

/// Savings as a percentage of the baseline.
inline double savings(double smart_kwh, double baseline_kwh)
{
  return (baseline_kwh - smart_kwh) / baseline_kwh * 100.0;
}

/// Always-on baseline in kWh: every LED and fan at full rated power.
inline double always_on_kwh(double led_watts, double fan_watts, int rooms, double hours)
{
  return (led_watts + fan_watts) * rooms * hours / 1000.0;
}

}  // namespace oracle

/// Constant environment for both rooms; occupancy and smoke as given.
inline envsim::scenario flat_scenario(double p_duration,
                                      double p_lux,
                                      double p_temp,
                                      double p_humidity,
                                      bool p_occupied)
{
  envsim::room_script room;
  if (p_occupied) {
    room.occupancy_windows = { { 0.0, p_duration } };
  }
  room.lux_curve = { { 0.0, p_lux } };
  room.temp_curve = { { 0.0, p_temp } };
  room.humidity_curve = { { 0.0, p_humidity } };
  envsim::scenario result;
  result.name = "flat";
  result.duration = p_duration;
  result.time_scale = 1.0;
  result.rooms = { room, room };
  return result;
}

/// Both rooms occupied throughout; at `p_step_t` the environment jumps from
/// bright and cool to dark, hot and humid.
inline envsim::scenario step_scenario(double p_duration, double p_step_t)
{
  envsim::room_script room;
  room.occupancy_windows = { { 0.0, p_duration } };
  room.lux_curve = { { 0.0, 2500.0 }, { p_step_t - 1.0, 2500.0 }, { p_step_t, 50.0 } };
  room.temp_curve = { { 0.0, 22.0 }, { p_step_t - 1.0, 22.0 }, { p_step_t, 34.0 } };
  room.humidity_curve = { { 0.0, 50.0 }, { p_step_t - 1.0, 50.0 }, { p_step_t, 85.0 } };
  envsim::scenario result;
  result.name = "step";
  result.duration = p_duration;
  result.time_scale = 1.0;
  result.rooms = { room, room };
  return result;
}

}  // namespace smarthome::testing
