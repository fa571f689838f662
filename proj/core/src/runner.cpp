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

#include <smarthome/runner.hpp>

#include <cmath>
#include <cstdlib>
#include <set>
#include <thread>

#include <smarthome/api.hpp>
#include <smarthome/error.hpp>

#include "json_util.hpp"

namespace smarthome::runner {
namespace {

controller_options make_options(const run_config& p_config, const service_config& p_service)
{
  controller_options options;
  options.tick_s = p_config.tick_s;
  options.log_interval_s = p_config.log_interval_s;
  if (p_config.hours) {
    options.duration_s = *p_config.hours * 3600.0;
  }
  options.log_path = p_config.out_dir / "energy_log.csv";
  options.always_on_baseline = p_config.always_on_baseline;
  options.noise.enabled = p_config.noise;
  options.settings = p_service.settings;
  return options;
}

void prepare_output(const run_config& p_config)
{
  std::error_code ec;
  std::filesystem::create_directories(p_config.out_dir, ec);
  if (ec) {
    throw io_error("cannot create " + p_config.out_dir.string() + ": " + ec.message());
  }
}

run_result finish(const run_config& p_config,
                  const controller& p_controller,
                  std::chrono::steady_clock::time_point p_started)
{
  run_result result;
  result.report = p_controller.report();
  result.csv_path = p_config.out_dir / "energy_log.csv";
  result.summary_text_path = p_config.out_dir / "summary.txt";
  result.summary_json_path = p_config.out_dir / "summary.json";
  result.ticks = p_controller.ticks_done();
  result.log_failures = p_controller.log_failures();
  result.wall_time = std::chrono::steady_clock::now() - p_started;

  auto text = energy::to_text(result.report);
  text += "Configuration: ";
  text += p_config.always_on_baseline ? "always-on baseline\n" : "smart automation\n";
  text += "Scenario: " + p_controller.scenario().name + "\n";
  text += "Ticks: " + std::to_string(result.ticks) + "\n";
  text += "Log write failures: " + std::to_string(result.log_failures) + "\n";
  detail::write_file_atomically(result.summary_text_path, text);

  auto root = nlohmann::json::parse(energy::to_json(result.report));
  root["configuration"] = p_config.always_on_baseline ? "always-on" : "smart";
  root["scenario"] = p_controller.scenario().name;
  root["ticks"] = result.ticks;
  root["log_failures"] = result.log_failures;
  detail::write_file_atomically(result.summary_json_path, root.dump(2) + "\n");
  return result;
}

struct csv_summary
{
  energy::energy_totals totals;
  std::int64_t last_unix_s = 0;
  std::int64_t interval_s = 30;
  double elapsed_s = 0.0;
};

csv_summary summarise(std::string_view p_text, std::string_view p_label)
{
  std::vector<energy::energy_record> records;
  try {
    records = energy::parse_csv(p_text);
  } catch (const parse_error& e) {
    throw parse_error(std::string(p_label) + ": " + e.what());
  }
  if (records.empty()) {
    throw parse_error(std::string(p_label) + ": no data rows");
  }
  csv_summary summary;
  std::set<std::int64_t> instants;
  for (const auto& record : records) {
    const auto unix_s = parse_iso8601(record.timestamp);
    if (!unix_s) {
      throw parse_error(std::string(p_label) + ": bad timestamp " + record.timestamp);
    }
    instants.insert(*unix_s);
    summary.totals.led_kwh += record.led_wh / 1000.0;
    summary.totals.fan_kwh += record.fan_wh / 1000.0;
  }
  if (instants.size() >= 2) {
    summary.interval_s = *std::next(instants.begin()) - *instants.begin();
  }
  summary.last_unix_s = *instants.rbegin();
  summary.elapsed_s = static_cast<double>(instants.size() * summary.interval_s);
  return summary;
}

}  // namespace

void validate(const run_config& p_config)
{
  if (p_config.hours && !(*p_config.hours > 0.0)) {
    throw validation_error("hours", "must be > 0");
  }
  if (p_config.time_scale && !(*p_config.time_scale >= 1.0)) {
    throw validation_error("time-scale", "must be >= 1");
  }
  if (p_config.tick_s < 1) {
    throw validation_error("tick", "must be >= 1");
  }
  if (p_config.log_interval_s < p_config.tick_s ||
      p_config.log_interval_s % p_config.tick_s != 0) {
    throw validation_error("log-interval", "must be a positive multiple of tick");
  }
  if (p_config.mode == run_mode::serve &&
      (p_config.port < 0 || p_config.port > 65535)) {
    throw validation_error("port", "must be within [0, 65535]");
  }
}

envsim::scenario resolve_scenario(const run_config& p_config)
{
  auto scenario = p_config.scenario == "reference" ? envsim::builtin_reference_scenario()
                                                   : envsim::load_scenario(p_config.scenario);
  if (p_config.time_scale) {
    scenario.time_scale = *p_config.time_scale;
  }
  return scenario;
}

hal::hardware_manifest resolve_manifest(const run_config& p_config)
{
  return p_config.manifest.empty() ? hal::default_manifest()
                                   : hal::load_manifest(p_config.manifest);
}

std::filesystem::path config_path_for(const run_config& p_config)
{
  return p_config.config_path.empty() ? p_config.out_dir / "smarthome.json"
                                      : p_config.config_path;
}

credentials ensure_credentials(const std::filesystem::path& p_config_path)
{
  auto config = load_service_config(p_config_path);
  if (config.login) {
    return *config.login;
  }
  const char* user = std::getenv("SMARTHOME_USER");
  const char* password = std::getenv("SMARTHOME_PASSWORD");
  config.login = credentials::create(user != nullptr ? user : "admin",
                                     password != nullptr ? password : "admin");
  save_service_config(p_config_path, config);
  return *config.login;
}

run_result run_headless(const run_config& p_config)
{
  validate(p_config);
  const auto started = std::chrono::steady_clock::now();
  auto scenario = resolve_scenario(p_config);
  auto manifest = resolve_manifest(p_config);
  prepare_output(p_config);
  const auto service = load_service_config(config_path_for(p_config));

  controller control(std::move(scenario), std::move(manifest), make_options(p_config, service));
  control.run_to_end();
  return finish(p_config, control, started);
}

run_result run_serve(const run_config& p_config,
                     const std::atomic<bool>& p_stop,
                     const std::function<void(int)>& p_on_listening)
{
  validate(p_config);
  const auto started = std::chrono::steady_clock::now();
  auto scenario = resolve_scenario(p_config);
  auto manifest = resolve_manifest(p_config);
  prepare_output(p_config);
  const auto config_path = config_path_for(p_config);
  const auto login = ensure_credentials(config_path);
  const auto service = load_service_config(config_path);

  const double scale = scenario.time_scale;
  controller control(std::move(scenario), std::move(manifest), make_options(p_config, service));
  api::server_options server_options;
  server_options.config_path = config_path;
  server_options.web_root = p_config.web_root;
  api::server http(control, login, std::move(server_options));
  const int port = http.start(p_config.host, p_config.port);
  if (p_on_listening) {
    p_on_listening(port);
  }

  using wall_clock = std::chrono::steady_clock;
  const auto wall_start = wall_clock::now();
  const std::chrono::duration<double> wall_per_tick(p_config.tick_s / scale);
  while (!control.finished() && !p_stop.load()) {
    const auto due = wall_start + std::chrono::duration_cast<wall_clock::duration>(
                                    wall_per_tick * static_cast<double>(control.ticks_done()));
    std::this_thread::sleep_until(due);
    if (p_stop.load()) {
      break;
    }
    control.step();
  }
  while (p_config.linger && !p_stop.load()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  http.stop();
  return finish(p_config, control, started);
}

energy::savings_report compare_csv_text(std::string_view p_smart_csv,
                                        std::string_view p_baseline_csv,
                                        double p_tariff)
{
  const auto smart = summarise(p_smart_csv, "smart");
  const auto baseline = summarise(p_baseline_csv, "baseline");
  const auto interval = std::max(smart.interval_s, baseline.interval_s);
  if (std::llabs(smart.last_unix_s - baseline.last_unix_s) > interval ||
      std::fabs(smart.elapsed_s - baseline.elapsed_s) > static_cast<double>(interval)) {
    throw validation_error("duration", "runs differ by more than one log interval");
  }
  return energy::compare(smart.totals, baseline.totals, p_tariff, baseline.elapsed_s);
}

energy::savings_report compare_runs(const std::filesystem::path& p_smart_csv,
                                    const std::filesystem::path& p_baseline_csv,
                                    double p_tariff)
{
  return compare_csv_text(
    detail::read_file(p_smart_csv), detail::read_file(p_baseline_csv), p_tariff);
}

}  // namespace smarthome::runner
