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
#include <thread>

#include <smarthome/controller.hpp>
#include <smarthome/error.hpp>

#include "test_support.hpp"

using namespace smarthome;
using engine::device_mode;

namespace {

int applied(const controller& p_control, std::string_view p_id)
{
  return p_control.hardware().applied_duty(p_id);
}

controller_options logged_to(const std::filesystem::path& p_path)
{
  controller_options options;
  options.log_path = p_path;
  return options;
}

}  // namespace

TEST_CASE("fresh controller publishes an idle snapshot")
{
  controller control(testing::flat_scenario(120.0, 50.0, 35.0, 90.0, false),
                     hal::default_manifest(), {});
  const auto snapshot = control.snapshot();
  CHECK(snapshot->tick == 0);
  CHECK(snapshot->timestamp == "2025-07-15T08:00:00Z");
  REQUIRE(snapshot->rooms.size() == 2);
  for (const auto& room : snapshot->rooms) {
    CHECK_FALSE(room.occupied_effective);
    for (const auto& device : room.devices) {
      CHECK(device.mode == device_mode::automatic);
      CHECK(device.applied_duty_pct == 0);
    }
  }
  CHECK(snapshot->cum_kwh == 0.0);
  CHECK(control.total_ticks() == 120);
}

TEST_CASE("step change reaches the actuators within one tick")
{
  controller control(testing::step_scenario(200.0, 100.0), hal::default_manifest(), {});
  while (control.ticks_done() < 100) {
    control.step();
  }
  CHECK(applied(control, "led_1") == 0);
  CHECK(applied(control, "fan_1") == 0);
  control.step();
  CHECK(applied(control, "led_1") == 100);
  CHECK(applied(control, "fan_1") == 100);
  CHECK(applied(control, "fan_2") == 100);
}

TEST_CASE("mode and duty requests apply at the next tick")
{
  controller control(testing::flat_scenario(100.0, 3000.0, 20.0, 50.0, false),
                     hal::default_manifest(), {});
  control.step();
  const auto pending = control.request_mode("led_1", device_mode::on);
  CHECK(pending.mode == device_mode::on);
  CHECK(applied(control, "led_1") == 0);
  control.step();
  CHECK(applied(control, "led_1") == 100);

  CHECK_THROWS_AS(control.request_duty("fan_1", 55), conflict_error);
  control.request_mode("fan_1", device_mode::manual);
  CHECK(control.request_duty("fan_1", 55).manual_duty_pct == 55);
  control.step();
  CHECK(applied(control, "fan_1") == 55);

  control.request_mode("fan_1", device_mode::off);
  control.step();
  CHECK(applied(control, "fan_1") == 0);

  CHECK_THROWS_AS(control.request_mode("heater", device_mode::on), not_found_error);
  CHECK_THROWS_AS(control.request_duty("heater", 10), not_found_error);
  CHECK_THROWS_AS(control.request_mode("buzzer_1", device_mode::on), conflict_error);
  control.request_mode("led_2", device_mode::manual);
  CHECK_THROWS_AS(control.request_duty("led_2", 101), range_error);
}

TEST_CASE("threshold changes apply at the next tick")
{
  controller control(testing::flat_scenario(100.0, 1600.0, 20.0, 50.0, true),
                     hal::default_manifest(), {});
  control.step();
  CHECK(applied(control, "led_1") == 20);
  auto settings = control.pending_tunables();
  settings.thresholds.lux_off = 1500.0;
  control.request_tunables(settings);
  CHECK(applied(control, "led_1") == 20);
  control.step();
  CHECK(applied(control, "led_1") == 0);

  settings.thresholds.lux_full = 1600.0;
  CHECK_THROWS_AS(control.request_tunables(settings), validation_error);
  CHECK(control.pending_tunables().thresholds.lux_full == 100.0);
}

TEST_CASE("smoke triggers both buzzers in the first tick of the event")
{
  auto scenario = testing::flat_scenario(100.0, 500.0, 25.0, 50.0, false);
  scenario.rooms[1].smoke_events = { { 40.0, 45.0 } };
  controller control(std::move(scenario), hal::default_manifest(), {});
  control.request_mode("led_1", device_mode::off);
  control.request_mode("fan_2", device_mode::manual);
  while (control.ticks_done() < 40) {
    control.step();
    REQUIRE(applied(control, "buzzer_1") == 0);
  }
  control.step();
  CHECK(applied(control, "buzzer_1") == 100);
  CHECK(applied(control, "buzzer_2") == 100);
  CHECK(control.snapshot()->alarm_active);
  while (control.ticks_done() < 46) {
    control.step();
  }
  CHECK(applied(control, "buzzer_1") == 0);
  CHECK_FALSE(control.snapshot()->alarm_active);
}

TEST_CASE("logging cadence and CSV consistency")
{
  testing::temp_dir dir("cadence");
  const auto path = dir / "energy_log.csv";
  controller control(testing::step_scenario(3600.0, 1000.0), hal::default_manifest(),
                     logged_to(path));
  control.run_to_end();
  CHECK(control.finished());
  CHECK(control.ticks_done() == 3600);

  const auto text = testing::slurp(path);
  CHECK(control.export_csv() == text);
  const auto records = energy::parse_csv(text);
  REQUIRE(records.size() == 2 * 3600 / 30);
  CHECK(records.front().timestamp == "2025-07-15T08:00:30Z");
  CHECK(records.back().timestamp == "2025-07-15T09:00:00Z");

  double wh = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    wh += records[i].led_wh + records[i].fan_wh;
    if (i >= 2) {
      REQUIRE(parse_iso8601(records[i].timestamp).value() -
                parse_iso8601(records[i - 2].timestamp).value() ==
              30);
    }
  }
  const auto totals = control.totals();
  CHECK(wh / 1000.0 == doctest::Approx(totals.total_kwh()).epsilon(1e-4));
  CHECK(records.back().cum_kwh == doctest::Approx(totals.total_kwh()).epsilon(1e-4));

  CHECK(control.records_since(std::nullopt).size() == records.size());
  CHECK(control.records_since(default_epoch_unix_s).size() == records.size());
  CHECK(control.records_since(default_epoch_unix_s + 1800).size() == 2 * 61);
  CHECK(control.records_since(default_epoch_unix_s + 99999).empty());
}

TEST_CASE("a fresh run replaces an old log")
{
  testing::temp_dir dir("replace");
  const auto path = dir / "energy_log.csv";
  testing::spit(path, "stale\n");
  controller control(testing::flat_scenario(60.0, 500.0, 25.0, 50.0, true),
                     hal::default_manifest(), logged_to(path));
  control.run_to_end();
  CHECK(energy::parse_csv(testing::slurp(path)).size() == 4);
}

TEST_CASE("log write failures are counted and the loop continues")
{
  testing::temp_dir dir("failing");
  const auto path = dir / "energy_log.csv";
  controller control(testing::flat_scenario(120.0, 500.0, 25.0, 50.0, true),
                     hal::default_manifest(), logged_to(path));
  while (control.ticks_done() < 30) {
    control.step();
  }
  std::filesystem::remove(path);
  std::filesystem::create_directory(path);
  control.run_to_end();
  CHECK(control.finished());
  CHECK(control.log_failures() == 3);
  CHECK(control.records_since(std::nullopt).size() == 8);
}

TEST_CASE("always-on baseline runs everything at full duty")
{
  controller_options options;
  options.always_on_baseline = true;
  controller control(testing::flat_scenario(3600.0, 5000.0, 10.0, 10.0, false),
                     hal::default_manifest(), options);
  control.run_to_end();
  const auto totals = control.totals();
  CHECK(totals.led_kwh == doctest::Approx(0.018));
  CHECK(totals.fan_kwh == doctest::Approx(0.100));
  const auto report = control.report();
  CHECK(*report.total.savings_pct == doctest::Approx(0.0));
}

TEST_CASE("controller option validation")
{
  const auto scenario = testing::flat_scenario(100.0, 500.0, 25.0, 50.0, true);
  auto construct = [&](controller_options p_options) {
    controller control(scenario, hal::default_manifest(), std::move(p_options));
  };
  controller_options options;
  options.tick_s = 0;
  CHECK_THROWS_AS(construct(options), validation_error);
  options = {};
  options.log_interval_s = 45;
  options.tick_s = 30;
  CHECK_THROWS_AS(construct(options), validation_error);
  options = {};
  options.duration_s = 200.0;
  CHECK_THROWS_AS(construct(options), validation_error);
  options.duration_s = 0.0;
  CHECK_THROWS_AS(construct(options), validation_error);
  options.duration_s = 50.0;
  CHECK_NOTHROW(construct(options));
}

TEST_CASE("property: snapshots agree with the mode resolution of their own tick")
{
  controller_options options;
  options.duration_s = 3600.0;
  controller control(envsim::builtin_reference_scenario(), hal::default_manifest(), options);
  std::atomic<bool> done{ false };
  std::atomic<int> violations{ 0 };
  std::atomic<int> reads{ 0 };
  std::thread reader([&] {
    while (!done.load()) {
      const auto snapshot = control.snapshot();
      reads.fetch_add(1);
      for (const auto& room : snapshot->rooms) {
        for (const auto& device : room.devices) {
          const bool forced_on = device.mode == device_mode::on && device.applied_duty_pct != 100;
          const bool forced_off = device.mode == device_mode::off && device.applied_duty_pct != 0;
          const bool manual = device.mode == device_mode::manual &&
                              device.applied_duty_pct != device.manual_duty_pct;
          const bool gated = device.mode == device_mode::automatic &&
                             device.kind != hal::device_kind::buzzer &&
                             !room.occupied_effective && device.applied_duty_pct != 0;
          if (snapshot->tick > 0 && (forced_on || forced_off || manual || gated)) {
            violations.fetch_add(1);
          }
        }
      }
    }
  });
  const std::array modes{ device_mode::automatic, device_mode::on, device_mode::manual,
                          device_mode::off };
  int i = 0;
  while (!control.finished()) {
    if (control.ticks_done() % 97 == 0) {
      const auto mode = modes[static_cast<std::size_t>(i++) % modes.size()];
      control.request_mode("fan_1", mode);
      if (mode == device_mode::manual) {
        control.request_duty("fan_1", 10 + i % 80);
      }
    }
    control.step();
  }
  done.store(true);
  reader.join();
  CHECK(reads.load() > 0);
  CHECK(violations.load() == 0);
}
