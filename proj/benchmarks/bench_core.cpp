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

#include <benchmark/benchmark.h>

#include <smarthome/controller.hpp>
#include <smarthome/engine.hpp>
#include <smarthome/envsim.hpp>
#include <smarthome/hal.hpp>

using namespace smarthome;

static void bm_led_rule(benchmark::State& state)
{
  const engine::thresholds limits;
  double lux = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::led_duty_from_lux(lux, limits));
    lux = lux >= 3000.0 ? 0.0 : lux + 0.7;
  }
}
BENCHMARK(bm_led_rule);

static void bm_fan_rule(benchmark::State& state)
{
  const engine::thresholds limits;
  double temp = 18.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::fan_duty_from_climate(temp, 72.0, limits));
    temp = temp >= 36.0 ? 18.0 : temp + 0.3;
  }
}
BENCHMARK(bm_fan_rule);

static void bm_engine_tick(benchmark::State& state)
{
  const auto manifest = hal::default_manifest();
  const auto devices = engine::initial_device_states(manifest);
  const engine::thresholds limits;
  const std::vector<hal::sensor_frame> frames{
    { 1, 10.0, 27.0, 60.0, 400.0, true, std::nullopt },
    { 2, 10.0, 31.0, 80.0, 1200.0, false, false },
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::tick(10.0, frames, devices, limits, {}, manifest));
  }
}
BENCHMARK(bm_engine_tick);

static void bm_controller_step(benchmark::State& state)
{
  auto control = std::make_unique<controller>(
    envsim::builtin_reference_scenario(), hal::default_manifest(), controller_options{});
  for (auto _ : state) {
    if (control->finished()) {
      state.PauseTiming();
      control = std::make_unique<controller>(
        envsim::builtin_reference_scenario(), hal::default_manifest(), controller_options{});
      state.ResumeTiming();
    }
    control->step();
  }
}
BENCHMARK(bm_controller_step);

static void bm_headless_hour(benchmark::State& state)
{
  controller_options options;
  options.duration_s = 3600.0;
  for (auto _ : state) {
    controller control(envsim::builtin_reference_scenario(), hal::default_manifest(), options);
    control.run_to_end();
    benchmark::DoNotOptimize(control.totals());
  }
}
BENCHMARK(bm_headless_hour)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
