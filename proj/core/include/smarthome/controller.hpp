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
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <smarthome/clock.hpp>
#include <smarthome/config.hpp>
#include <smarthome/energy.hpp>
#include <smarthome/engine.hpp>
#include <smarthome/envsim.hpp>
#include <smarthome/error.hpp>
#include <smarthome/hal.hpp>

namespace smarthome {

/// Mutation refused because of the device's current mode or kind.
class conflict_error : public error
{
public:
  using error::error;
};

struct room_status
{
  hal::sensor_frame frame;
  bool occupied_effective = false;
  std::vector<engine::device_state> devices;
};

/// Everything /api/status reports, taken from a single completed tick.
struct status_snapshot
{
  std::uint64_t tick = 0;
  envsim::seconds t = 0.0;
  std::string timestamp;
  std::vector<room_status> rooms;
  bool alarm_active = false;
  double cum_kwh = 0.0;
  double cum_cost_gbp = 0.0;
};

struct controller_options
{
  /// Whole simulated seconds per tick.
  int tick_s = 1;
  int log_interval_s = 30;
  /// Simulated seconds to run; defaults to the scenario duration.
  std::optional<double> duration_s;
  /// Where energy_log.csv is written; no CSV when empty.
  std::filesystem::path log_path;
  /// Start every LED and fan in ON mode.
  bool always_on_baseline = false;
  hal::noise_config noise;
  tunables settings;
  std::int64_t epoch_unix_s = default_epoch_unix_s;
};

/// Composition root for one run: environment, simulated drivers, rule
/// engine and energy accounting on a simulated clock.
///
/// `step()` runs on one control thread. The request_* calls may come from
/// any thread; they update a pending configuration that the next tick
/// adopts as a whole before reading sensors.
class controller
{
public:
  controller(envsim::scenario p_scenario,
             hal::hardware_manifest p_manifest,
             controller_options p_options);

  controller(const controller&) = delete;
  controller& operator=(const controller&) = delete;

  /// One tick: adopt pending config, read sensors, decide, apply, meter,
  /// log on interval boundaries, publish a snapshot. No-op once finished.
  void step();
  void run_to_end();

  [[nodiscard]] bool finished() const noexcept;
  [[nodiscard]] std::uint64_t ticks_done() const noexcept
  {
    return m_tick.load();
  }
  [[nodiscard]] std::uint64_t total_ticks() const noexcept
  {
    return m_total_ticks;
  }
  [[nodiscard]] envsim::seconds now() const noexcept;
  [[nodiscard]] double duration_s() const noexcept
  {
    return static_cast<double>(m_total_ticks) * m_options.tick_s;
  }
  [[nodiscard]] const controller_options& options() const noexcept
  {
    return m_options;
  }
  [[nodiscard]] const hal::hardware_manifest& manifest() const noexcept
  {
    return m_hardware.manifest();
  }
  [[nodiscard]] const envsim::scenario& scenario() const noexcept
  {
    return m_scenario;
  }
  [[nodiscard]] const hal::hardware& hardware() const noexcept
  {
    return m_hardware;
  }

  [[nodiscard]] std::shared_ptr<const status_snapshot> snapshot() const;

  /// Pending state for a device as the next tick will see it. Throws
  /// not_found_error; conflict_error for buzzers (alarm-controlled).
  engine::device_state request_mode(std::string_view p_device_id,
                                    engine::device_mode p_mode);

  /// Throws not_found_error, range_error for duty outside [0, 100],
  /// conflict_error unless the pending mode is MANUAL.
  engine::device_state request_duty(std::string_view p_device_id, int p_duty_pct);

  /// Validated before being queued.
  tunables request_tunables(const tunables& p_tunables);
  [[nodiscard]] tunables pending_tunables() const;

  /// Records with timestamp >= `p_since_unix_s` (all when nullopt).
  [[nodiscard]] std::vector<energy::energy_record> records_since(
    std::optional<std::int64_t> p_since_unix_s) const;

  /// On-disk CSV bytes; empty when logging is disabled.
  [[nodiscard]] std::string export_csv() const;

  [[nodiscard]] energy::savings_report report() const;
  [[nodiscard]] energy::energy_totals totals() const;
  [[nodiscard]] std::uint64_t log_failures() const noexcept
  {
    return m_log_failures.load();
  }

private:
  struct pending_config
  {
    std::vector<engine::device_state> devices;
    tunables settings;
  };

  void adopt_pending();
  void publish(const std::vector<hal::sensor_frame>& p_frames,
               const engine::tick_result& p_result);
  [[nodiscard]] std::size_t pending_index(std::string_view p_device_id) const;

  envsim::scenario m_scenario;
  controller_options m_options;
  hal::simulated_hardware m_hardware;
  simulated_clock m_clock;
  std::uint64_t m_total_ticks = 0;
  std::atomic<std::uint64_t> m_tick{ 0 };

  // Control-thread state.
  std::vector<engine::device_state> m_devices;
  tunables m_settings;
  engine::occupancy_tracker m_tracker;
  energy::interval_logger m_interval_logger;
  std::unique_ptr<energy::csv_log_writer> m_writer;

  mutable std::mutex m_pending_mutex;
  pending_config m_pending;

  mutable std::mutex m_ledger_mutex;
  energy::energy_ledger m_ledger;

  mutable std::mutex m_records_mutex;
  std::vector<std::pair<std::int64_t, energy::energy_record>> m_records;

  mutable std::mutex m_snapshot_mutex;
  std::shared_ptr<const status_snapshot> m_snapshot;

  std::atomic<std::uint64_t> m_log_failures{ 0 };
};

}  // namespace smarthome
