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

// smarthome: headless experiments, the live control service and log tools.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include <smarthome/error.hpp>
#include <smarthome/runner.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_runtime = 2;

std::atomic<bool> g_stop{ false };

extern "C" void handle_signal(int)
{
  g_stop.store(true);
}

void add_run_flags(CLI::App& p_command, smarthome::runner::run_config& p_config)
{
  p_command.add_option("--scenario", p_config.scenario,
                       "Scenario file, or 'reference' for the bundled 12 h day")
    ->capture_default_str();
  p_command.add_option("--manifest", p_config.manifest,
                       "Hardware manifest (default: two-room layout)");
  p_command.add_option_function<double>(
    "--hours", [&p_config](double p_hours) { p_config.hours = p_hours; },
    "Simulated hours to run (default: scenario duration)");
  p_command.add_option_function<double>(
    "--time-scale", [&p_config](double p_scale) { p_config.time_scale = p_scale; },
    "Simulated seconds per wall second (serve mode pacing)");
  p_command.add_option("--tick", p_config.tick_s, "Tick length in simulated seconds")
    ->capture_default_str();
  p_command.add_option("--log-interval", p_config.log_interval_s,
                       "CSV logging interval in simulated seconds")
    ->capture_default_str();
  p_command.add_option("--out", p_config.out_dir, "Output directory")
    ->capture_default_str();
  p_command.add_option("--config", p_config.config_path,
                       "Service config (thresholds, tariff, login); default <out>/smarthome.json");
  p_command.add_option_function<std::string>(
    "--baseline",
    [&p_config](const std::string& p_value) {
      p_config.always_on_baseline = p_value == "always-on";
    },
    "Comparison baseline; 'always-on' forces every LED and fan to 100%")
    ->check(CLI::IsMember({ "always-on" }));
  p_command.add_flag("--noise", p_config.noise, "Enable seeded Gaussian sensor noise");
}

void print_result(const smarthome::runner::run_result& p_result)
{
  std::cout << smarthome::energy::to_text(p_result.report);
  std::cout << "Ticks: " << p_result.ticks << "  wall time: " << p_result.wall_time.count()
            << " s\n";
  std::cout << "Wrote " << p_result.csv_path.string() << ", "
            << p_result.summary_text_path.string() << ", "
            << p_result.summary_json_path.string() << "\n";
  if (p_result.log_failures > 0) {
    std::cerr << "warning: " << p_result.log_failures << " log write failures\n";
  }
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Simulated two-room smart home automation service" };
  app.require_subcommand(1);

  smarthome::runner::run_config run_config;
  auto* run = app.add_subcommand("run", "Headless experiment run (free-running clock)");
  add_run_flags(*run, run_config);

  smarthome::runner::run_config serve_config;
  serve_config.mode = smarthome::runner::run_mode::serve;
  auto* serve = app.add_subcommand("serve", "Paced run with the HTTP API live");
  add_run_flags(*serve, serve_config);
  serve->add_option("--port", serve_config.port, "HTTP port")->capture_default_str();
  serve->add_option("--host", serve_config.host, "Bind address")->capture_default_str();
  serve->add_option("--web-root", serve_config.web_root, "Static dashboard directory");
  serve->add_flag("--linger", serve_config.linger,
                  "Keep the API up after the scenario ends (stop with SIGINT/SIGTERM)");

  std::string smart_csv;
  std::string baseline_csv;
  double tariff = smarthome::energy::default_tariff_gbp_per_kwh;
  auto* compare = app.add_subcommand("compare", "Compare a smart run CSV against a baseline CSV");
  compare->add_option("smart", smart_csv, "energy_log.csv of the smart run")->required();
  compare->add_option("baseline", baseline_csv, "energy_log.csv of the baseline run")
    ->required();
  compare->add_option("--tariff", tariff, "GBP per kWh")->capture_default_str();

  std::string scenario_path;
  bool dump_reference = false;
  auto* scenario = app.add_subcommand("scenario", "Validate a scenario file or dump the reference");
  scenario->add_option("file", scenario_path, "Scenario file to validate");
  scenario->add_flag("--dump-reference", dump_reference,
                     "Print the bundled reference scenario as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (run->parsed()) {
      smarthome::runner::validate(run_config);
      print_result(smarthome::runner::run_headless(run_config));
      return exit_ok;
    }
    if (serve->parsed()) {
      smarthome::runner::validate(serve_config);
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      const auto on_listening = [&serve_config](int p_port) {
        std::cout << "Serving on http://" << serve_config.host << ":" << p_port << std::endl;
      };
      print_result(smarthome::runner::run_serve(serve_config, g_stop, on_listening));
      return exit_ok;
    }
    if (compare->parsed()) {
      const auto report = smarthome::runner::compare_runs(smart_csv, baseline_csv, tariff);
      std::cout << smarthome::energy::to_text(report);
      return exit_ok;
    }
    if (scenario->parsed()) {
      if (dump_reference) {
        std::cout << smarthome::envsim::to_json(smarthome::envsim::builtin_reference_scenario());
        return exit_ok;
      }
      if (scenario_path.empty()) {
        std::cerr << "error: give a scenario file or --dump-reference\n";
        return exit_config;
      }
      const auto loaded = smarthome::envsim::load_scenario(scenario_path);
      std::cout << loaded.name << ": ok (" << loaded.duration << " s)\n";
      return exit_ok;
    }
  } catch (const smarthome::validation_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const smarthome::parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_runtime;
  }
  return exit_ok;
}
