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

#include <smarthome/engine.hpp>

#include <algorithm>
#include <cmath>

#include <smarthome/error.hpp>

namespace smarthome::engine {

void validate(const thresholds& p_thresholds)
{
  const auto& t = p_thresholds;
  const std::pair<const char*, double> fields[] = {
    { "lux_off", t.lux_off },       { "lux_full", t.lux_full },
    { "fan_t1_c", t.fan_t1_c },     { "fan_t2_c", t.fan_t2_c },
    { "fan_t3_c", t.fan_t3_c },     { "fan_h3_pct", t.fan_h3_pct },
    { "occupancy_hold_s", t.occupancy_hold_s },
  };
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) {
      throw validation_error(name, "must be finite");
    }
  }
  if (t.lux_full < 0.0) {
    throw validation_error("lux_full", "must be >= 0");
  }
  if (!(t.lux_full < t.lux_off)) {
    throw validation_error("lux_full", "lux_full must be < lux_off");
  }
  if (!(t.fan_t1_c < t.fan_t2_c)) {
    throw validation_error("fan_t2_c", "fan_t1_c must be < fan_t2_c");
  }
  if (!(t.fan_t2_c < t.fan_t3_c)) {
    throw validation_error("fan_t3_c", "fan_t2_c must be < fan_t3_c");
  }
  if (t.fan_h3_pct < 0.0 || t.fan_h3_pct > 100.0) {
    throw validation_error("fan_h3_pct", "must be within [0, 100]");
  }
  if (t.occupancy_hold_s < 0.0) {
    throw validation_error("occupancy_hold_s", "must be >= 0");
  }
}

std::string_view to_string(device_mode p_mode) noexcept
{
  switch (p_mode) {
    case device_mode::automatic:
      return "AUTO";
    case device_mode::manual:
      return "MANUAL";
    case device_mode::on:
      return "ON";
    case device_mode::off:
      return "OFF";
  }
  return "AUTO";
}

std::optional<device_mode> parse_device_mode(std::string_view p_text)
{
  for (auto mode : { device_mode::automatic,
                     device_mode::manual,
                     device_mode::on,
                     device_mode::off }) {
    if (to_string(mode) == p_text) {
      return mode;
    }
  }
  return std::nullopt;
}

std::vector<device_state> initial_device_states(
  const hal::hardware_manifest& p_manifest)
{
  std::vector<device_state> states;
  for (const auto* device : p_manifest.devices()) {
    states.push_back({ .device_id = device->id,
                       .kind = device->kind,
                       .mode = device_mode::automatic,
                       .manual_duty_pct = 0,
                       .applied_duty_pct = 0,
                       .rated_watts = device->rated_watts });
  }
  return states;
}

void occupancy_tracker::observe(hal::room_id p_room,
                                envsim::seconds p_t,
                                bool p_motion)
{
  if (p_motion) {
    m_last_motion[p_room] = p_t;
  }
}

bool occupancy_tracker::occupied_effective(hal::room_id p_room,
                                           envsim::seconds p_t,
                                           double p_hold_s) const
{
  const auto it = m_last_motion.find(p_room);
  return it != m_last_motion.end() && p_t - it->second <= p_hold_s;
}

std::optional<envsim::seconds> occupancy_tracker::last_motion(
  hal::room_id p_room) const
{
  const auto it = m_last_motion.find(p_room);
  if (it == m_last_motion.end()) {
    return std::nullopt;
  }
  return it->second;
}

int led_duty_from_lux(double p_lux, const thresholds& p_thresholds)
{
  if (p_lux > p_thresholds.lux_off) {
    return 0;
  }
  if (p_lux < p_thresholds.lux_full) {
    return 100;
  }
  const double duty = (p_thresholds.lux_off - p_lux) / (p_thresholds.lux_off / 100.0);
  return std::clamp(static_cast<int>(duty), 0, 100);
}

int fan_duty_from_climate(double p_temp_c,
                          double p_humidity_pct,
                          const thresholds& p_thresholds)
{
  if (p_temp_c > p_thresholds.fan_t3_c) {
    return p_humidity_pct > p_thresholds.fan_h3_pct ? fan_tier3_duty
                                                    : fan_tier2_duty;
  }
  if (p_temp_c > p_thresholds.fan_t2_c) {
    return fan_tier2_duty;
  }
  if (p_temp_c > p_thresholds.fan_t1_c) {
    return fan_tier1_duty;
  }
  return 0;
}

std::vector<hal::actuator_command> smoke_alarm(
  std::span<const hal::sensor_frame> p_frames,
  const hal::hardware_manifest& p_manifest)
{
  const bool smoke = std::any_of(p_frames.begin(), p_frames.end(), [](const auto& f) {
    return f.smoke.value_or(false);
  });
  std::vector<hal::actuator_command> commands;
  for (const auto* device : p_manifest.devices()) {
    if (device->kind == hal::device_kind::buzzer) {
      commands.push_back({ device->id, hal::device_kind::buzzer, smoke ? 100 : 0 });
    }
  }
  return commands;
}

tick_result tick(envsim::seconds p_t,
                 std::span<const hal::sensor_frame> p_frames,
                 std::span<const device_state> p_devices,
                 const thresholds& p_thresholds,
                 occupancy_tracker p_tracker,
                 const hal::hardware_manifest& p_manifest)
{
  auto frame_for = [&](hal::room_id p_room) -> const hal::sensor_frame* {
    const auto it = std::find_if(p_frames.begin(), p_frames.end(), [p_room](const auto& f) {
      return f.room == p_room;
    });
    return it == p_frames.end() ? nullptr : &*it;
  };

  tick_result result;
  for (const auto& room : p_manifest.rooms) {
    const auto* frame = frame_for(room.id);
    if (frame == nullptr) {
      throw validation_error("frames",
                             "missing sensor frame for room " + std::to_string(room.id));
    }
    p_tracker.observe(room.id, p_t, frame->motion);
    result.rooms.push_back(
      { room.id, p_tracker.occupied_effective(room.id, p_t, p_thresholds.occupancy_hold_s) });
  }
  if (p_frames.size() != p_manifest.rooms.size()) {
    throw validation_error("frames", "expected one frame per configured room");
  }

  for (const auto& device : p_devices) {
    if (device.kind == hal::device_kind::buzzer) {
      continue;
    }
    const auto* room = p_manifest.room_of(device.device_id);
    if (room == nullptr) {
      throw not_found_error("device " + device.device_id + " not in manifest");
    }
    const auto& frame = *frame_for(room->id);
    const bool occupied = std::find_if(result.rooms.begin(), result.rooms.end(), [&](const auto& r) {
                            return r.room == room->id;
                          })->occupied_effective;
    const int rule_duty = device.kind == hal::device_kind::led
                            ? led_duty_from_lux(frame.lux, p_thresholds)
                            : fan_duty_from_climate(frame.temp_c, frame.humidity_pct, p_thresholds);
    const int auto_duty = occupancy_gate(rule_duty, occupied);
    result.commands.push_back(
      { device.device_id, device.kind, resolve_device(device.mode, auto_duty, device.manual_duty_pct) });
  }

  auto buzzers = smoke_alarm(p_frames, p_manifest);
  result.alarm_active = std::any_of(p_frames.begin(), p_frames.end(), [](const auto& f) {
    return f.smoke.value_or(false);
  });
  result.commands.insert(result.commands.end(), buzzers.begin(), buzzers.end());
  result.tracker = std::move(p_tracker);
  return result;
}

}  // namespace smarthome::engine
