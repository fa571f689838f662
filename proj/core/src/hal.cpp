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

#include <smarthome/hal.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>

#include <smarthome/error.hpp>

#include "json_util.hpp"

namespace smarthome::hal {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t p_x) noexcept
{
  p_x += 0x9E3779B97F4A7C15ULL;
  p_x = (p_x ^ (p_x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  p_x = (p_x ^ (p_x >> 27U)) * 0x94D049BB133111EBULL;
  return p_x ^ (p_x >> 31U);
}

/// Standard normal sample keyed on (seed, room, t, channel).
double keyed_normal(std::uint64_t p_seed,
                    room_id p_room,
                    envsim::seconds p_t,
                    std::uint64_t p_channel)
{
  auto state = splitmix64(p_seed);
  state = splitmix64(state ^ static_cast<std::uint64_t>(p_room));
  state = splitmix64(state ^ std::bit_cast<std::uint64_t>(p_t));
  state = splitmix64(state ^ p_channel);
  const auto second = splitmix64(state);
  // 53-bit uniforms in (0, 1].
  const double u1 =
    (static_cast<double>(state >> 11U) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(second >> 11U) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

nlohmann::json room_to_json(const room_spec& p_room)
{
  auto sensors = nlohmann::json::array();
  for (const auto& sensor : p_room.sensors) {
    sensors.push_back(
      { { "kind", std::string(to_string(sensor.kind)) }, { "pin", sensor.pin } });
  }
  auto devices = nlohmann::json::array();
  for (const auto& device : p_room.devices) {
    devices.push_back({ { "id", device.id },
                        { "kind", std::string(to_string(device.kind)) },
                        { "rated_watts", device.rated_watts },
                        { "pin", device.pin } });
  }
  return { { "id", p_room.id },
           { "name", p_room.name },
           { "sensors", std::move(sensors) },
           { "devices", std::move(devices) } };
}

}  // namespace

std::string_view to_string(device_kind p_kind) noexcept
{
  switch (p_kind) {
    case device_kind::led:
      return "led";
    case device_kind::fan:
      return "fan";
    case device_kind::buzzer:
      return "buzzer";
  }
  return "unknown";
}

std::string_view to_string(sensor_kind p_kind) noexcept
{
  switch (p_kind) {
    case sensor_kind::pir:
      return "pir";
    case sensor_kind::dht22:
      return "dht22";
    case sensor_kind::bh1750:
      return "bh1750";
    case sensor_kind::mq_smoke:
      return "mq_smoke";
  }
  return "unknown";
}

std::optional<device_kind> parse_device_kind(std::string_view p_text)
{
  for (auto kind : { device_kind::led, device_kind::fan, device_kind::buzzer }) {
    if (to_string(kind) == p_text) {
      return kind;
    }
  }
  return std::nullopt;
}

std::optional<sensor_kind> parse_sensor_kind(std::string_view p_text)
{
  for (auto kind : { sensor_kind::pir,
                     sensor_kind::dht22,
                     sensor_kind::bh1750,
                     sensor_kind::mq_smoke }) {
    if (to_string(kind) == p_text) {
      return kind;
    }
  }
  return std::nullopt;
}

bool room_spec::has_sensor(sensor_kind p_kind) const noexcept
{
  return std::any_of(sensors.begin(), sensors.end(), [p_kind](const auto& s) {
    return s.kind == p_kind;
  });
}

const room_spec* hardware_manifest::find_room(room_id p_id) const noexcept
{
  const auto it = std::find_if(
    rooms.begin(), rooms.end(), [p_id](const auto& r) { return r.id == p_id; });
  return it == rooms.end() ? nullptr : &*it;
}

const device_spec* hardware_manifest::find_device(
  std::string_view p_id) const noexcept
{
  for (const auto& room : rooms) {
    for (const auto& device : room.devices) {
      if (device.id == p_id) {
        return &device;
      }
    }
  }
  return nullptr;
}

const room_spec* hardware_manifest::room_of(
  std::string_view p_device_id) const noexcept
{
  for (const auto& room : rooms) {
    for (const auto& device : room.devices) {
      if (device.id == p_device_id) {
        return &room;
      }
    }
  }
  return nullptr;
}

std::vector<const device_spec*> hardware_manifest::devices() const
{
  std::vector<const device_spec*> result;
  for (const auto& room : rooms) {
    for (const auto& device : room.devices) {
      result.push_back(&device);
    }
  }
  return result;
}

hardware_manifest default_manifest()
{
  auto make_room = [](room_id p_id,
                      const char* p_led_pin,
                      const char* p_fan_pin,
                      const char* p_buzzer_pin,
                      bool p_smoke) {
    room_spec room;
    room.id = p_id;
    room.name = "Room " + std::to_string(p_id);
    room.sensors = {
      { sensor_kind::pir, "" },
      { sensor_kind::dht22, "" },
      { sensor_kind::bh1750, "I2C" },
    };
    if (p_smoke) {
      room.sensors.push_back({ sensor_kind::mq_smoke, "GPIO21" });
    }
    const auto suffix = std::to_string(p_id);
    room.devices = {
      { "led_" + suffix, device_kind::led, 9.0, p_led_pin },
      { "fan_" + suffix, device_kind::fan, 50.0, p_fan_pin },
      { "buzzer_" + suffix, device_kind::buzzer, 0.0, p_buzzer_pin },
    };
    return room;
  };

  hardware_manifest manifest;
  manifest.rooms.push_back(make_room(1, "GPIO27", "GPIO13", "GPIO22", false));
  manifest.rooms.push_back(make_room(2, "GPIO35", "GPIO19", "GPIO23", true));
  return manifest;
}

void validate(const hardware_manifest& p_manifest)
{
  if (p_manifest.rooms.empty()) {
    throw validation_error("rooms", "at least one room required");
  }
  std::set<room_id> room_ids;
  std::set<std::string> device_ids;
  for (std::size_t i = 0; i < p_manifest.rooms.size(); ++i) {
    const auto& room = p_manifest.rooms[i];
    const auto prefix = "rooms[" + std::to_string(i) + "].";
    if (room.id < 1) {
      throw validation_error(prefix + "id", "room ids start at 1");
    }
    if (!room_ids.insert(room.id).second) {
      throw validation_error(prefix + "id", "duplicate room id");
    }
    for (std::size_t j = 0; j < room.devices.size(); ++j) {
      const auto& device = room.devices[j];
      const auto field = prefix + "devices[" + std::to_string(j) + "]";
      if (device.id.empty()) {
        throw validation_error(field + ".id", "empty device id");
      }
      if (!device_ids.insert(device.id).second) {
        throw validation_error(field + ".id", "duplicate device id " + device.id);
      }
      if (!std::isfinite(device.rated_watts) || device.rated_watts < 0.0) {
        throw validation_error(field + ".rated_watts", "must be >= 0");
      }
    }
  }
}

hardware_manifest parse_manifest(std::string_view p_text)
{
  const auto root = detail::parse_json_document(p_text, "manifest");
  if (!root.is_object()) {
    throw parse_error("manifest: top level must be an object");
  }
  detail::reject_unknown_keys(root, { "rooms" }, "");
  const auto& rooms = detail::require_node(root, "rooms");
  if (!rooms.is_array()) {
    throw validation_error("rooms", "expected an array");
  }

  hardware_manifest manifest;
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const auto& node = rooms[i];
    const auto prefix = "rooms[" + std::to_string(i) + "].";
    if (!node.is_object()) {
      throw validation_error("rooms[" + std::to_string(i) + "]",
                             "expected an object");
    }
    detail::reject_unknown_keys(node, { "id", "name", "sensors", "devices" }, prefix);
    room_spec room;
    room.id = detail::require<int>(node, "id", prefix);
    room.name = node.contains("name")
                  ? detail::require<std::string>(node, "name", prefix)
                  : "Room " + std::to_string(room.id);

    const auto sensors = node.value("sensors", nlohmann::json::array());
    for (std::size_t j = 0; j < sensors.size(); ++j) {
      const auto sensor_prefix = prefix + "sensors[" + std::to_string(j) + "].";
      const auto& entry = sensors[j];
      if (!entry.is_object()) {
        throw validation_error(prefix + "sensors", "expected objects");
      }
      detail::reject_unknown_keys(entry, { "kind", "pin" }, sensor_prefix);
      const auto kind_text = detail::require<std::string>(entry, "kind", sensor_prefix);
      const auto kind = parse_sensor_kind(kind_text);
      if (!kind) {
        throw validation_error(sensor_prefix + "kind", "unknown sensor kind " + kind_text);
      }
      room.sensors.push_back(
        { *kind, entry.value("pin", std::string{}) });
    }

    const auto& devices = detail::require_node(node, "devices", prefix);
    if (!devices.is_array()) {
      throw validation_error(prefix + "devices", "expected an array");
    }
    for (std::size_t j = 0; j < devices.size(); ++j) {
      const auto device_prefix = prefix + "devices[" + std::to_string(j) + "].";
      const auto& entry = devices[j];
      if (!entry.is_object()) {
        throw validation_error(prefix + "devices", "expected objects");
      }
      detail::reject_unknown_keys(
        entry, { "id", "kind", "rated_watts", "pin" }, device_prefix);
      device_spec device;
      device.id = detail::require<std::string>(entry, "id", device_prefix);
      const auto kind_text = detail::require<std::string>(entry, "kind", device_prefix);
      const auto kind = parse_device_kind(kind_text);
      if (!kind) {
        throw validation_error(device_prefix + "kind", "unknown device kind " + kind_text);
      }
      device.kind = *kind;
      device.rated_watts = detail::require<double>(entry, "rated_watts", device_prefix);
      device.pin = entry.value("pin", std::string{});
      room.devices.push_back(std::move(device));
    }
    manifest.rooms.push_back(std::move(room));
  }
  validate(manifest);
  return manifest;
}

hardware_manifest load_manifest(const std::filesystem::path& p_path)
{
  return parse_manifest(detail::read_file(p_path));
}

std::string to_json(const hardware_manifest& p_manifest)
{
  auto rooms = nlohmann::json::array();
  for (const auto& room : p_manifest.rooms) {
    rooms.push_back(room_to_json(room));
  }
  return nlohmann::json{ { "rooms", std::move(rooms) } }.dump(2) + "\n";
}

simulated_hardware::simulated_hardware(hardware_manifest p_manifest,
                                       const envsim::scenario& p_scenario,
                                       noise_config p_noise)
  : m_manifest(std::move(p_manifest))
  , m_scenario(p_scenario)
  , m_noise(p_noise)
{
  validate(m_manifest);
  for (const auto& room : m_manifest.rooms) {
    if (static_cast<std::size_t>(room.id) > m_scenario.rooms.size()) {
      throw validation_error("rooms",
                             "manifest room " + std::to_string(room.id) +
                               " has no script in scenario " + m_scenario.name);
    }
  }
  m_devices = m_manifest.devices();
  m_applied.assign(m_devices.size(), 0);
}

sensor_frame simulated_hardware::read_sensors(room_id p_room,
                                              envsim::seconds p_t)
{
  const auto* room = m_manifest.find_room(p_room);
  if (room == nullptr) {
    throw not_found_error("unknown room " + std::to_string(p_room));
  }
  const auto state = envsim::env_at(m_scenario, p_t);
  const auto& truth = state.rooms.at(static_cast<std::size_t>(p_room - 1));

  sensor_frame frame{
    .room = p_room,
    .t = p_t,
    .temp_c = truth.temp_c,
    .humidity_pct = truth.humidity_pct,
    .lux = truth.lux,
    .motion = truth.occupied,
    .smoke = std::nullopt,
  };
  if (room->has_smoke_sensor()) {
    frame.smoke = truth.smoke;
  }
  if (m_noise.enabled) {
    const auto seed = m_scenario.seed;
    frame.temp_c += m_noise.temp_sigma_c * keyed_normal(seed, p_room, p_t, 1);
    frame.humidity_pct +=
      m_noise.humidity_sigma_pct * keyed_normal(seed, p_room, p_t, 2);
    frame.lux += m_noise.lux_sigma * keyed_normal(seed, p_room, p_t, 3);
    frame.humidity_pct = std::clamp(frame.humidity_pct, 0.0, 100.0);
    frame.lux = std::max(frame.lux, 0.0);
  }
  return frame;
}

std::size_t simulated_hardware::index_of(std::string_view p_device_id) const
{
  for (std::size_t i = 0; i < m_devices.size(); ++i) {
    if (m_devices[i]->id == p_device_id) {
      return i;
    }
  }
  throw not_found_error("unknown device " + std::string(p_device_id));
}

applied_state simulated_hardware::apply(const actuator_command& p_command)
{
  const auto index = index_of(p_command.device_id);
  const auto& device = *m_devices[index];
  if (device.kind != p_command.kind) {
    throw validation_error("kind",
                           p_command.device_id + " is a " +
                             std::string(to_string(device.kind)));
  }
  if (p_command.duty_pct < 0 || p_command.duty_pct > 100) {
    throw range_error("duty " + std::to_string(p_command.duty_pct) +
                      " outside [0, 100] for " + p_command.device_id);
  }
  if (device.kind == device_kind::buzzer && p_command.duty_pct != 0 &&
      p_command.duty_pct != 100) {
    throw range_error("buzzer duty must be 0 or 100");
  }
  std::unique_lock lock(m_mutex);
  m_applied[index] = p_command.duty_pct;
  return { device.id, p_command.duty_pct };
}

int simulated_hardware::applied_duty(std::string_view p_device_id) const
{
  const auto index = index_of(p_device_id);
  std::shared_lock lock(m_mutex);
  return m_applied[index];
}

std::vector<applied_state> simulated_hardware::applied_snapshot() const
{
  std::vector<applied_state> result;
  result.reserve(m_devices.size());
  std::shared_lock lock(m_mutex);
  for (std::size_t i = 0; i < m_devices.size(); ++i) {
    result.push_back({ m_devices[i]->id, m_applied[i] });
  }
  return result;
}

}  // namespace smarthome::hal
