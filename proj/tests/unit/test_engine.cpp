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

#include <doctest.h>

#include <array>

#include <smarthome/engine.hpp>
#include <smarthome/error.hpp>

#include "test_support.hpp"

using namespace smarthome;
using namespace smarthome::engine;
using hal::device_kind;

namespace {

std::vector<hal::sensor_frame> frames(double p_lux,
                                      double p_temp,
                                      double p_humidity,
                                      bool p_motion,
                                      bool p_smoke = false,
                                      double p_t = 0.0)
{
  return {
    { 1, p_t, p_temp, p_humidity, p_lux, p_motion, std::nullopt },
    { 2, p_t, p_temp, p_humidity, p_lux, p_motion, p_smoke },
  };
}

int duty_of(const tick_result& p_result, std::string_view p_id)
{
  for (const auto& command : p_result.commands) {
    if (command.device_id == p_id) {
      return command.duty_pct;
    }
  }
  FAIL("no command for " << p_id);
  return -1;
}

}  // namespace

TEST_CASE("LED rule matches the reference chain on every integer lux")
{
  const thresholds defaults;
  for (int lux = 0; lux <= 3000; ++lux) {
    REQUIRE_MESSAGE(led_duty_from_lux(lux, defaults) == testing::oracle::reference_led(lux),
                    "lux " << lux);
  }
}

TEST_CASE("LED rule matches the reference chain on a fine fractional grid")
{
  const thresholds defaults;
  for (int tenth = 0; tenth <= 30000; ++tenth) {
    const double lux = tenth / 10.0;
    REQUIRE_MESSAGE(led_duty_from_lux(lux, defaults) == testing::oracle::reference_led(lux),
                    "lux " << lux);
  }
  for (double lux : { 99.999999, 100.000001, 1999.999999, 2000.000001, 1980.0000001 }) {
    CHECK(led_duty_from_lux(lux, defaults) == testing::oracle::reference_led(lux));
  }
}

TEST_CASE("LED rule boundary values")
{
  const thresholds defaults;
  CHECK(led_duty_from_lux(3000, defaults) == 0);
  CHECK(led_duty_from_lux(2000.5, defaults) == 0);
  CHECK(led_duty_from_lux(2000, defaults) == 0);
  CHECK(led_duty_from_lux(1990, defaults) == 0);
  CHECK(led_duty_from_lux(1980, defaults) == 1);
  CHECK(led_duty_from_lux(1000, defaults) == 50);
  CHECK(led_duty_from_lux(100, defaults) == 95);
  CHECK(led_duty_from_lux(99.9, defaults) == 100);
  CHECK(led_duty_from_lux(0, defaults) == 100);
}

TEST_CASE("property: LED duty is non-increasing with one jump at lux_full")
{
  const thresholds defaults;
  int previous = led_duty_from_lux(0.0, defaults);
  std::vector<double> jumps;
  for (int step = 1; step <= 300000; ++step) {
    const double lux = step / 100.0;
    const int duty = led_duty_from_lux(lux, defaults);
    REQUIRE(duty >= 0);
    REQUIRE(duty <= 100);
    REQUIRE_MESSAGE(duty <= previous, "lux " << lux);
    if (previous - duty > 1) {
      jumps.push_back(lux);
    }
    previous = duty;
  }
  CHECK(jumps == std::vector<double>{ defaults.lux_full });
}

TEST_CASE("LED ramp follows custom cutoffs")
{
  thresholds custom;
  custom.lux_off = 1500.0;
  CHECK(led_duty_from_lux(1600.0, custom) == 0);
  CHECK(led_duty_from_lux(1500.0, custom) == 0);
  CHECK(led_duty_from_lux(750.0, custom) == 50);
  CHECK(led_duty_from_lux(99.0, custom) == 100);
  custom.lux_full = 400.0;
  CHECK(led_duty_from_lux(399.0, custom) == 100);
  CHECK(led_duty_from_lux(400.0, custom) == 73);
}

TEST_CASE("fan tier table")
{
  const thresholds defaults;
  struct row
  {
    double temp;
    double humidity;
    int duty;
  };
  const std::array table{
    row{ 20.0, 90.0, 0 },   row{ 24.0, 90.0, 0 },   row{ 24.01, 10.0, 40 },
    row{ 25.0, 80.0, 40 },  row{ 27.0, 90.0, 40 },  row{ 27.5, 40.0, 70 },
    row{ 30.0, 95.0, 70 },  row{ 30.5, 70.0, 70 },  row{ 30.5, 70.1, 100 },
    row{ 35.0, 50.0, 70 },  row{ 35.0, 99.0, 100 }, row{ -5.0, 100.0, 0 },
  };
  for (const auto& entry : table) {
    CHECK_MESSAGE(fan_duty_from_climate(entry.temp, entry.humidity, defaults) == entry.duty,
                  entry.temp << " C " << entry.humidity << " %");
  }
}

TEST_CASE("fan rule matches the reference tiers over the climate grid")
{
  const thresholds defaults;
  for (int t = -100; t <= 450; ++t) {
    for (int h = 0; h <= 100; ++h) {
      const double temp = t / 10.0;
      REQUIRE(fan_duty_from_climate(temp, h, defaults) ==
              testing::oracle::reference_fan(temp, h));
    }
  }
}

TEST_CASE("property: fan duty is monotone in temperature and humidity")
{
  const thresholds defaults;
  for (int h = 0; h <= 100; h += 5) {
    int previous = 0;
    for (int t = 0; t <= 500; ++t) {
      const int duty = fan_duty_from_climate(t / 10.0, h, defaults);
      REQUIRE(duty >= previous);
      previous = duty;
    }
  }
  for (int t = 0; t <= 500; t += 5) {
    int previous = 0;
    for (int h = 0; h <= 100; ++h) {
      const int duty = fan_duty_from_climate(t / 10.0, h, defaults);
      REQUIRE(duty >= previous);
      previous = duty;
    }
  }
}

TEST_CASE("occupancy gate and mode precedence")
{
  static_assert(occupancy_gate(70, true) == 70);
  static_assert(occupancy_gate(70, false) == 0);
  for (int auto_duty = 0; auto_duty <= 100; auto_duty += 10) {
    for (int manual = 0; manual <= 100; manual += 10) {
      CHECK(resolve_device(device_mode::automatic, auto_duty, manual) == auto_duty);
      CHECK(resolve_device(device_mode::manual, auto_duty, manual) == manual);
      CHECK(resolve_device(device_mode::on, auto_duty, manual) == 100);
      CHECK(resolve_device(device_mode::off, auto_duty, manual) == 0);
    }
  }
}

TEST_CASE("occupancy tracker holds for the configured time")
{
  occupancy_tracker tracker;
  CHECK_FALSE(tracker.occupied_effective(1, 0.0, 30.0));
  tracker.observe(1, 10.0, true);
  tracker.observe(1, 11.0, false);
  CHECK(tracker.last_motion(1) == 10.0);
  CHECK(tracker.occupied_effective(1, 40.0, 30.0));
  CHECK_FALSE(tracker.occupied_effective(1, 40.5, 30.0));
  CHECK_FALSE(tracker.occupied_effective(2, 10.0, 30.0));
  CHECK_FALSE(tracker.last_motion(2).has_value());
}

TEST_CASE("vacant rooms get zero automatic duty")
{
  const auto manifest = hal::default_manifest();
  const auto devices = initial_device_states(manifest);
  const auto result = tick(0.0, frames(50.0, 35.0, 90.0, false), devices, {}, {}, manifest);
  for (const auto& command : result.commands) {
    CHECK(command.duty_pct == 0);
  }
  CHECK_FALSE(result.alarm_active);
}

TEST_CASE("occupied rooms follow the rules")
{
  const auto manifest = hal::default_manifest();
  const auto devices = initial_device_states(manifest);
  const auto result = tick(0.0, frames(1000.0, 28.0, 50.0, true), devices, {}, {}, manifest);
  CHECK(duty_of(result, "led_1") == 50);
  CHECK(duty_of(result, "fan_1") == 70);
  CHECK(duty_of(result, "led_2") == 50);
  CHECK(duty_of(result, "fan_2") == 70);
  CHECK(duty_of(result, "buzzer_1") == 0);
  REQUIRE(result.rooms.size() == 2);
  CHECK(result.rooms[0].occupied_effective);
}

TEST_CASE("hold keeps devices running after motion stops")
{
  const auto manifest = hal::default_manifest();
  const auto devices = initial_device_states(manifest);
  auto first = tick(0.0, frames(50.0, 28.0, 50.0, true, false, 0.0), devices, {}, {}, manifest);
  auto held = tick(30.0, frames(50.0, 28.0, 50.0, false, false, 30.0), devices, {},
                   first.tracker, manifest);
  CHECK(duty_of(held, "fan_1") == 70);
  auto expired = tick(31.0, frames(50.0, 28.0, 50.0, false, false, 31.0), devices, {},
                      held.tracker, manifest);
  CHECK(duty_of(expired, "fan_1") == 0);
  CHECK(duty_of(expired, "led_1") == 0);
}

TEST_CASE("manual, on and off bypass occupancy")
{
  const auto manifest = hal::default_manifest();
  auto devices = initial_device_states(manifest);
  devices[0].mode = device_mode::on;
  devices[1].mode = device_mode::manual;
  devices[1].manual_duty_pct = 55;
  devices[3].mode = device_mode::off;
  const auto vacant = tick(0.0, frames(50.0, 35.0, 90.0, false), devices, {}, {}, manifest);
  CHECK(duty_of(vacant, "led_1") == 100);
  CHECK(duty_of(vacant, "fan_1") == 55);
  CHECK(duty_of(vacant, "led_2") == 0);
  const auto occupied = tick(0.0, frames(50.0, 35.0, 90.0, true), devices, {}, {}, manifest);
  CHECK(duty_of(occupied, "led_2") == 0);
  CHECK(duty_of(occupied, "fan_2") == 100);
}

TEST_CASE("property: smoke drives every buzzer whatever the modes")
{
  const auto manifest = hal::default_manifest();
  const std::array modes{ device_mode::automatic, device_mode::manual, device_mode::on,
                          device_mode::off };
  for (auto mode : modes) {
    for (bool motion : { false, true }) {
      auto devices = initial_device_states(manifest);
      for (auto& device : devices) {
        device.mode = mode;
      }
      const auto result = tick(0.0, frames(500.0, 25.0, 50.0, motion, true), devices, {}, {},
                               manifest);
      CHECK(result.alarm_active);
      CHECK(duty_of(result, "buzzer_1") == 100);
      CHECK(duty_of(result, "buzzer_2") == 100);
      const auto clear = tick(0.0, frames(500.0, 25.0, 50.0, motion, false), devices, {}, {},
                              manifest);
      CHECK_FALSE(clear.alarm_active);
      CHECK(duty_of(clear, "buzzer_1") == 0);
    }
  }
}

TEST_CASE("commands cover every device, lights and fans first")
{
  const auto manifest = hal::default_manifest();
  const auto devices = initial_device_states(manifest);
  const auto result = tick(0.0, frames(500.0, 25.0, 50.0, true), devices, {}, {}, manifest);
  REQUIRE(result.commands.size() == 6);
  CHECK(result.commands[0].device_id == "led_1");
  CHECK(result.commands[3].device_id == "fan_2");
  CHECK(result.commands[4].kind == device_kind::buzzer);
  CHECK(result.commands[5].kind == device_kind::buzzer);
}

TEST_CASE("property: tick is a pure function of its inputs")
{
  const auto manifest = hal::default_manifest();
  const auto devices = initial_device_states(manifest);
  occupancy_tracker tracker;
  tracker.observe(1, 0.0, true);
  for (double lux : { 0.0, 150.0, 900.0, 2500.0 }) {
    const auto f = frames(lux, 29.0, 75.0, false, false, 20.0);
    const auto a = tick(20.0, f, devices, {}, tracker, manifest);
    const auto b = tick(20.0, f, devices, {}, tracker, manifest);
    CHECK(a.commands == b.commands);
    CHECK(a.tracker == b.tracker);
  }
}

TEST_CASE("tick requires one frame per room")
{
  const auto manifest = hal::default_manifest();
  const auto devices = initial_device_states(manifest);
  auto only_one = frames(500.0, 25.0, 50.0, true);
  only_one.pop_back();
  CHECK_THROWS_AS((void)tick(0.0, only_one, devices, {}, {}, manifest), validation_error);
}

TEST_CASE("threshold validation names the violated ordering")
{
  auto expect_field = [](thresholds p_thresholds, const std::string& p_field) {
    try {
      validate(p_thresholds);
      FAIL("accepted invalid thresholds");
    } catch (const validation_error& e) {
      CHECK(e.field() == p_field);
    }
  };
  CHECK_NOTHROW(validate(thresholds{}));
  thresholds bad;
  bad.lux_full = 2000.0;
  expect_field(bad, "lux_full");
  bad = {};
  bad.fan_t1_c = 28.0;
  bad.fan_t2_c = 26.0;
  expect_field(bad, "fan_t2_c");
  bad = {};
  bad.fan_t3_c = 27.0;
  expect_field(bad, "fan_t3_c");
  bad = {};
  bad.occupancy_hold_s = -1.0;
  expect_field(bad, "occupancy_hold_s");
  bad = {};
  bad.fan_h3_pct = 120.0;
  expect_field(bad, "fan_h3_pct");
}

TEST_CASE("mode names")
{
  CHECK(to_string(device_mode::automatic) == "AUTO");
  CHECK(parse_device_mode("MANUAL") == device_mode::manual);
  CHECK_FALSE(parse_device_mode("TURBO").has_value());
  CHECK_FALSE(parse_device_mode("auto").has_value());
}
