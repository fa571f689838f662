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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <smarthome/hal.hpp>

namespace smarthome::engine {

/// User-editable rule parameters. "Above X" is strict throughout.
struct thresholds
{
  double lux_off = 2000.0;
  double lux_full = 100.0;
  double fan_t1_c = 24.0;
  double fan_t2_c = 27.0;
  double fan_t3_c = 30.0;
  double fan_h3_pct = 70.0;
  double occupancy_hold_s = 30.0;

  friend bool operator==(const thresholds&, const thresholds&) = default;
};

/// Throws validation_error naming the violated ordering.
void validate(const thresholds& p_thresholds);

inline constexpr int fan_tier1_duty = 40;
inline constexpr int fan_tier2_duty = 70;
inline constexpr int fan_tier3_duty = 100;

enum class device_mode
{
  automatic,
  manual,
  on,
  off,
};

/// "AUTO", "MANUAL", "ON", "OFF".
[[nodiscard]] std::string_view to_string(device_mode p_mode) noexcept;
[[nodiscard]] std::optional<device_mode> parse_device_mode(std::string_view p_text);

struct device_state
{
  std::string device_id;
  hal::device_kind kind = hal::device_kind::led;
  device_mode mode = device_mode::automatic;
  int manual_duty_pct = 0;
  int applied_duty_pct = 0;
  double rated_watts = 0.0;

  friend bool operator==(const device_state&, const device_state&) = default;
};

/// One state entry per manifest device, all in AUTO with zero duty.
[[nodiscard]] std::vector<device_state> initial_device_states(
  const hal::hardware_manifest& p_manifest);

/// Remembers the last simulated second each room reported motion.
class occupancy_tracker
{
public:
  void observe(hal::room_id p_room, envsim::seconds p_t, bool p_motion);

  /// True while `t - last_motion <= hold`.
  [[nodiscard]] bool occupied_effective(hal::room_id p_room,
                                        envsim::seconds p_t,
                                        double p_hold_s) const;

  [[nodiscard]] std::optional<envsim::seconds> last_motion(
    hal::room_id p_room) const;

  friend bool operator==(const occupancy_tracker&,
                         const occupancy_tracker&) = default;

private:
  std::map<hal::room_id, envsim::seconds> m_last_motion;
};

/// LED brightness from illuminance. At default thresholds this is exactly
/// `int((2000 - lux) / 20)` between the two cutoffs, including the step from
/// 100 (lux just below lux_full) to 95 (lux == lux_full).
[[nodiscard]] int led_duty_from_lux(double p_lux, const thresholds& p_thresholds);

/// Fan speed tiers: 0 up to t1, 40 up to t2, 70 up to t3; above t3 it is 100
/// only when humidity is above h3, otherwise it stays at 70.
[[nodiscard]] int fan_duty_from_climate(double p_temp_c,
                                        double p_humidity_pct,
                                        const thresholds& p_thresholds);

[[nodiscard]] constexpr int occupancy_gate(int p_auto_duty,
                                           bool p_occupied_effective) noexcept
{
  return p_occupied_effective ? p_auto_duty : 0;
}

/// MANUAL, ON and OFF bypass automation, including occupancy gating.
[[nodiscard]] constexpr int resolve_device(device_mode p_mode,
                                           int p_auto_duty,
                                           int p_manual_duty) noexcept
{
  switch (p_mode) {
    case device_mode::automatic:
      return p_auto_duty;
    case device_mode::manual:
      return p_manual_duty;
    case device_mode::on:
      return 100;
    case device_mode::off:
      return 0;
  }
  return 0;
}

/// Buzzer commands for every buzzer in the manifest: all 100 if any frame
/// reports smoke, otherwise all 0. Modes and occupancy do not apply.
[[nodiscard]] std::vector<hal::actuator_command> smoke_alarm(
  std::span<const hal::sensor_frame> p_frames,
  const hal::hardware_manifest& p_manifest);

struct room_decision
{
  hal::room_id room = 0;
  bool occupied_effective = false;
};

struct tick_result
{
  std::vector<hal::actuator_command> commands;
  occupancy_tracker tracker;
  std::vector<room_decision> rooms;
  bool alarm_active = false;
};

/// One sense-to-command step. `p_frames` must hold exactly one frame per
/// manifest room (validation_error otherwise). Commands are emitted for
/// every LED and fan in `p_devices` followed by the buzzers.
[[nodiscard]] tick_result tick(envsim::seconds p_t,
                               std::span<const hal::sensor_frame> p_frames,
                               std::span<const device_state> p_devices,
                               const thresholds& p_thresholds,
                               occupancy_tracker p_tracker,
                               const hal::hardware_manifest& p_manifest);

}  // namespace smarthome::engine
