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

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <smarthome/envsim.hpp>

namespace smarthome::hal {

using room_id = int;

enum class device_kind
{
  led,
  fan,
  buzzer,
};

enum class sensor_kind
{
  pir,
  dht22,
  bh1750,
  mq_smoke,
};

[[nodiscard]] std::string_view to_string(device_kind p_kind) noexcept;
[[nodiscard]] std::string_view to_string(sensor_kind p_kind) noexcept;
[[nodiscard]] std::optional<device_kind> parse_device_kind(std::string_view p_text);
[[nodiscard]] std::optional<sensor_kind> parse_sensor_kind(std::string_view p_text);

struct device_spec
{
  std::string id;
  device_kind kind = device_kind::led;
  double rated_watts = 0.0;
  /// Documentation only; nothing drives the pin.
  std::string pin;
};

struct sensor_spec
{
  sensor_kind kind = sensor_kind::pir;
  std::string pin;
};

struct room_spec
{
  room_id id = 0;
  std::string name;
  std::vector<sensor_spec> sensors;
  std::vector<device_spec> devices;

  [[nodiscard]] bool has_sensor(sensor_kind p_kind) const noexcept;
  [[nodiscard]] bool has_smoke_sensor() const noexcept
  {
    return has_sensor(sensor_kind::mq_smoke);
  }
};

struct hardware_manifest
{
  std::vector<room_spec> rooms;

  [[nodiscard]] const room_spec* find_room(room_id p_id) const noexcept;
  [[nodiscard]] const device_spec* find_device(std::string_view p_id) const noexcept;
  /// Room owning the device, or nullptr.
  [[nodiscard]] const room_spec* room_of(std::string_view p_device_id) const noexcept;
  /// Every device, in room then declaration order.
  [[nodiscard]] std::vector<const device_spec*> devices() const;
};

/// Two rooms, each with an LED (9 W), fan (50 W) and buzzer (0 W); the MQ
/// smoke sensor lives in room 2 only.
[[nodiscard]] hardware_manifest default_manifest();

void validate(const hardware_manifest& p_manifest);
[[nodiscard]] hardware_manifest parse_manifest(std::string_view p_text);
[[nodiscard]] hardware_manifest load_manifest(const std::filesystem::path& p_path);
[[nodiscard]] std::string to_json(const hardware_manifest& p_manifest);

/// One room's readings at a tick. `smoke` is present only when the room has
/// a smoke sensor.
struct sensor_frame
{
  room_id room = 0;
  envsim::seconds t = 0.0;
  double temp_c = 0.0;
  double humidity_pct = 0.0;
  double lux = 0.0;
  bool motion = false;
  std::optional<bool> smoke;

  friend bool operator==(const sensor_frame&, const sensor_frame&) = default;
};

struct actuator_command
{
  std::string device_id;
  device_kind kind = device_kind::led;
  int duty_pct = 0;

  friend bool operator==(const actuator_command&,
                         const actuator_command&) = default;
};

struct applied_state
{
  std::string device_id;
  int duty_pct = 0;

  friend bool operator==(const applied_state&, const applied_state&) = default;
};

/// Gaussian read noise on the analog channels. Off by default; the samples
/// are a pure function of (seed, room, t) so repeated reads agree.
struct noise_config
{
  bool enabled = false;
  double temp_sigma_c = 0.2;
  double humidity_sigma_pct = 1.0;
  double lux_sigma = 15.0;
};

/// Sensor-read / actuator-write boundary. A GPIO/I2C backend would implement
/// the same interface.
class hardware
{
public:
  virtual ~hardware() = default;

  [[nodiscard]] virtual const hardware_manifest& manifest() const noexcept = 0;

  /// Throws not_found_error for an unknown room.
  [[nodiscard]] virtual sensor_frame read_sensors(room_id p_room,
                                                  envsim::seconds p_t) = 0;

  /// Throws not_found_error for an unknown device, range_error for an
  /// out-of-range duty, validation_error when the kind does not match.
  virtual applied_state apply(const actuator_command& p_command) = 0;

  [[nodiscard]] virtual int applied_duty(std::string_view p_device_id) const = 0;

  /// Consistent read of every device's applied duty, in manifest order.
  [[nodiscard]] virtual std::vector<applied_state> applied_snapshot() const = 0;
};

/// Drivers backed by an envsim scenario.
class simulated_hardware final : public hardware
{
public:
  simulated_hardware(hardware_manifest p_manifest,
                     const envsim::scenario& p_scenario,
                     noise_config p_noise = {});

  [[nodiscard]] const hardware_manifest& manifest() const noexcept override
  {
    return m_manifest;
  }

  [[nodiscard]] sensor_frame read_sensors(room_id p_room,
                                          envsim::seconds p_t) override;
  applied_state apply(const actuator_command& p_command) override;
  [[nodiscard]] int applied_duty(std::string_view p_device_id) const override;
  [[nodiscard]] std::vector<applied_state> applied_snapshot() const override;

private:
  [[nodiscard]] std::size_t index_of(std::string_view p_device_id) const;

  hardware_manifest m_manifest;
  envsim::scenario m_scenario;
  noise_config m_noise;
  std::vector<const device_spec*> m_devices;

  mutable std::shared_mutex m_mutex;
  std::vector<int> m_applied;
};

}  // namespace smarthome::hal
