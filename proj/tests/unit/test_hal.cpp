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

#include <cmath>

#include <smarthome/error.hpp>
#include <smarthome/hal.hpp>

#include "test_support.hpp"

using namespace smarthome;
using namespace smarthome::hal;

TEST_CASE("default manifest layout")
{
  const auto manifest = default_manifest();
  REQUIRE(manifest.rooms.size() == 2);
  CHECK_FALSE(manifest.rooms[0].has_smoke_sensor());
  CHECK(manifest.rooms[1].has_smoke_sensor());
  for (const auto& room : manifest.rooms) {
    CHECK(room.has_sensor(sensor_kind::pir));
    CHECK(room.has_sensor(sensor_kind::dht22));
    CHECK(room.has_sensor(sensor_kind::bh1750));
  }
  CHECK(manifest.find_device("led_1")->rated_watts == 9.0);
  CHECK(manifest.find_device("fan_2")->rated_watts == 50.0);
  CHECK(manifest.find_device("buzzer_2")->rated_watts == 0.0);
  CHECK(manifest.find_device("led_1")->pin == "GPIO27");
  CHECK(manifest.find_device("fan_1")->pin == "GPIO13");
  CHECK(manifest.find_device("buzzer_1")->pin == "GPIO22");
  CHECK(manifest.room_of("fan_2")->id == 2);
  CHECK(manifest.find_device("heater_1") == nullptr);
  CHECK(manifest.devices().size() == 6);
}

TEST_CASE("shipped manifest equals the default")
{
  const auto shipped = load_manifest(testing::source_dir() / "data" / "manifest.json");
  CHECK(to_json(shipped) == to_json(default_manifest()));
  CHECK(to_json(parse_manifest(to_json(shipped))) == to_json(shipped));
}

TEST_CASE("manifest validation")
{
  auto manifest = default_manifest();
  SUBCASE("duplicate device id")
  {
    manifest.rooms[1].devices[0].id = "led_1";
    CHECK_THROWS_AS(validate(manifest), validation_error);
  }
  SUBCASE("negative watts")
  {
    manifest.rooms[0].devices[1].rated_watts = -1.0;
    CHECK_THROWS_AS(validate(manifest), validation_error);
  }
  SUBCASE("no rooms")
  {
    manifest.rooms.clear();
    CHECK_THROWS_AS(validate(manifest), validation_error);
  }
  SUBCASE("unknown kind in a file")
  {
    CHECK_THROWS_AS(
      (void)parse_manifest(R"({"rooms":[{"id":1,"devices":[{"id":"x","kind":"heater","rated_watts":1}]}]})"),
      validation_error);
  }
  SUBCASE("unknown key in a file")
  {
    CHECK_THROWS_AS((void)parse_manifest(R"({"rooms":[], "extra": 1})"), validation_error);
  }
}

TEST_CASE("frames follow the environment")
{
  const auto scenario = testing::flat_scenario(100.0, 420.0, 26.5, 61.0, true);
  simulated_hardware hw(default_manifest(), scenario);
  const auto frame = hw.read_sensors(1, 10.0);
  CHECK(frame.room == 1);
  CHECK(frame.t == 10.0);
  CHECK(frame.lux == 420.0);
  CHECK(frame.temp_c == 26.5);
  CHECK(frame.humidity_pct == 61.0);
  CHECK(frame.motion);
  CHECK_FALSE(frame.smoke.has_value());

  const auto kitchen = hw.read_sensors(2, 10.0);
  REQUIRE(kitchen.smoke.has_value());
  CHECK_FALSE(*kitchen.smoke);
  CHECK_THROWS_AS((void)hw.read_sensors(3, 0.0), not_found_error);
}

TEST_CASE("smoke is only reported by rooms with the sensor")
{
  auto scenario = testing::flat_scenario(100.0, 420.0, 26.5, 61.0, false);
  scenario.rooms[0].smoke_events = { { 0.0, 50.0 } };
  scenario.rooms[1].smoke_events = { { 0.0, 50.0 } };
  simulated_hardware hw(default_manifest(), scenario);
  CHECK_FALSE(hw.read_sensors(1, 5.0).smoke.has_value());
  CHECK(hw.read_sensors(2, 5.0).smoke == true);
  CHECK(hw.read_sensors(2, 50.0).smoke == false);
}

TEST_CASE("noise is seeded and repeatable")
{
  auto scenario = testing::flat_scenario(1000.0, 500.0, 25.0, 60.0, false);
  scenario.seed = 42;
  noise_config noise;
  noise.enabled = true;
  simulated_hardware a(default_manifest(), scenario, noise);
  simulated_hardware b(default_manifest(), scenario, noise);

  double sum_sq = 0.0;
  int differing = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto fa = a.read_sensors(1, t);
    REQUIRE(fa == b.read_sensors(1, t));
    REQUIRE(fa == a.read_sensors(1, t));
    sum_sq += (fa.temp_c - 25.0) * (fa.temp_c - 25.0);
    differing += fa.lux != 500.0 ? 1 : 0;
  }
  CHECK(differing > 990);
  CHECK(std::sqrt(sum_sq / 1000.0) == doctest::Approx(noise.temp_sigma_c).epsilon(0.15));

  scenario.seed = 43;
  simulated_hardware c(default_manifest(), scenario, noise);
  CHECK(c.read_sensors(1, 5.0) != a.read_sensors(1, 5.0));
}

TEST_CASE("noise keeps readings physical")
{
  auto scenario = testing::flat_scenario(2000.0, 0.0, 25.0, 100.0, false);
  noise_config noise;
  noise.enabled = true;
  simulated_hardware hw(default_manifest(), scenario, noise);
  for (int t = 0; t < 2000; ++t) {
    const auto frame = hw.read_sensors(2, t);
    REQUIRE(frame.lux >= 0.0);
    REQUIRE(frame.humidity_pct <= 100.0);
  }
}

TEST_CASE("apply validates commands")
{
  const auto scenario = testing::flat_scenario(100.0, 0.0, 20.0, 50.0, false);
  simulated_hardware hw(default_manifest(), scenario);

  CHECK(hw.apply({ "fan_1", device_kind::fan, 55 }) == applied_state{ "fan_1", 55 });
  CHECK(hw.applied_duty("fan_1") == 55);
  CHECK_THROWS_AS(hw.apply({ "fan_9", device_kind::fan, 10 }), not_found_error);
  CHECK_THROWS_AS(hw.apply({ "fan_1", device_kind::led, 10 }), validation_error);
  CHECK_THROWS_AS(hw.apply({ "fan_1", device_kind::fan, 101 }), range_error);
  CHECK_THROWS_AS(hw.apply({ "fan_1", device_kind::fan, -1 }), range_error);
  CHECK_THROWS_AS(hw.apply({ "buzzer_1", device_kind::buzzer, 50 }), range_error);
  CHECK(hw.applied_duty("fan_1") == 55);
  CHECK_THROWS_AS((void)hw.applied_duty("nope"), not_found_error);

  hw.apply({ "buzzer_2", device_kind::buzzer, 100 });
  const auto snapshot = hw.applied_snapshot();
  REQUIRE(snapshot.size() == 6);
  CHECK(snapshot[0] == applied_state{ "led_1", 0 });
  CHECK(snapshot[1] == applied_state{ "fan_1", 55 });
  CHECK(snapshot[5] == applied_state{ "buzzer_2", 100 });
}

TEST_CASE("property: every legal duty is stored exactly")
{
  const auto scenario = testing::flat_scenario(100.0, 0.0, 20.0, 50.0, false);
  simulated_hardware hw(default_manifest(), scenario);
  for (int duty = 0; duty <= 100; ++duty) {
    hw.apply({ "led_2", device_kind::led, duty });
    REQUIRE(hw.applied_duty("led_2") == duty);
  }
}

TEST_CASE("scenario must cover every manifest room")
{
  auto manifest = default_manifest();
  auto extra = manifest.rooms[0];
  extra.id = 3;
  for (auto& device : extra.devices) {
    device.id += "_x";
  }
  manifest.rooms.push_back(extra);
  const auto scenario = testing::flat_scenario(100.0, 0.0, 20.0, 50.0, false);
  CHECK_THROWS_AS(simulated_hardware(manifest, scenario), validation_error);
}

TEST_CASE("kind names round-trip")
{
  for (auto kind : { device_kind::led, device_kind::fan, device_kind::buzzer }) {
    CHECK(parse_device_kind(to_string(kind)) == kind);
  }
  for (auto kind : { sensor_kind::pir, sensor_kind::dht22, sensor_kind::bh1750,
                     sensor_kind::mq_smoke }) {
    CHECK(parse_sensor_kind(to_string(kind)) == kind);
  }
  CHECK_FALSE(parse_device_kind("LED").has_value());
}
