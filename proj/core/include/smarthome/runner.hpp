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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <smarthome/controller.hpp>
#include <smarthome/energy.hpp>

namespace smarthome::runner {

enum class run_mode
{
  serve,
  headless,
};

struct run_config
{
  /// File path, or "reference" for the bundled scenario.
  std::string scenario = "reference";
  /// Empty selects the default two-room manifest.
  std::filesystem::path manifest;
  run_mode mode = run_mode::headless;
  /// Overrides the scenario's time scale when set.
  std::optional<double> time_scale;
  std::optional<double> hours;
  int tick_s = 1;
  int log_interval_s = 30;
  std::filesystem::path out_dir = "out";
  int port = 8080;
  std::string host = "127.0.0.1";
  /// Thresholds, tariff and login; defaults to <out_dir>/smarthome.json.
  std::filesystem::path config_path;
  bool always_on_baseline = false;
  bool noise = false;
  std::filesystem::path web_root;
  /// Keep serving the API after the scenario ends (serve mode).
  bool linger = false;
};

/// Throws validation_error for inconsistent settings.
void validate(const run_config& p_config);

[[nodiscard]] envsim::scenario resolve_scenario(const run_config& p_config);
[[nodiscard]] hal::hardware_manifest resolve_manifest(const run_config& p_config);
[[nodiscard]] std::filesystem::path config_path_for(const run_config& p_config);

struct run_result
{
  energy::savings_report report;
  std::filesystem::path csv_path;
  std::filesystem::path summary_text_path;
  std::filesystem::path summary_json_path;
  std::uint64_t ticks = 0;
  std::uint64_t log_failures = 0;
  std::chrono::duration<double> wall_time{};
};

/// Free-running run to the configured duration. Writes energy_log.csv,
/// summary.txt and summary.json into the output directory.
[[nodiscard]] run_result run_headless(const run_config& p_config);

/// Paced run with the HTTP API live. Ticks advance at wall time scaled by
/// the time scale until the end of the run (or `p_stop`). `p_on_listening`
/// receives the bound port once the API accepts connections. Outputs as for
/// run_headless.
[[nodiscard]] run_result run_serve(const run_config& p_config,
                                   const std::atomic<bool>& p_stop,
                                   const std::function<void(int)>& p_on_listening = {});

/// Table-shaped comparison of two energy_log.csv files. Throws parse_error
/// on schema problems and validation_error when durations differ by more
/// than one log interval.
[[nodiscard]] energy::savings_report compare_runs(
  const std::filesystem::path& p_smart_csv,
  const std::filesystem::path& p_baseline_csv,
  double p_tariff = energy::default_tariff_gbp_per_kwh);

/// Same as compare_runs over in-memory CSV text.
[[nodiscard]] energy::savings_report compare_csv_text(
  std::string_view p_smart_csv,
  std::string_view p_baseline_csv,
  double p_tariff = energy::default_tariff_gbp_per_kwh);

/// Loads credentials from the service config, or creates them from
/// SMARTHOME_USER / SMARTHOME_PASSWORD (default admin / admin) and saves.
[[nodiscard]] credentials ensure_credentials(const std::filesystem::path& p_config_path);

}  // namespace smarthome::runner
