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
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <smarthome/engine.hpp>
#include <smarthome/hal.hpp>

namespace smarthome::energy {

inline constexpr double default_tariff_gbp_per_kwh = 0.34;

/// Linear PWM model: watts = duty / 100 * rated.
[[nodiscard]] constexpr double instantaneous_power(int p_duty_pct,
                                                   double p_rated_watts) noexcept
{
  return p_duty_pct / 100.0 * p_rated_watts;
}

/// Half-up rounding to three decimals (0.48144 -> 0.481, 0.2565 -> 0.257).
[[nodiscard]] double round_currency(double p_value) noexcept;

/// `p_kwh * p_tariff`, rounded with round_currency.
[[nodiscard]] double cost_of(double p_kwh, double p_tariff) noexcept;

/// Per-device cumulative energy by step integration. Cost is always derived
/// from the unrounded total and the current tariff.
class energy_ledger
{
public:
  explicit energy_ledger(double p_tariff_gbp_per_kwh = default_tariff_gbp_per_kwh)
    : m_tariff(p_tariff_gbp_per_kwh)
  {
  }

  /// Adds `watts * dt` to the device. Throws range_error when dt <= 0 or
  /// watts < 0.
  void accumulate(std::string_view p_device_id, double p_watts, double p_dt_s);

  [[nodiscard]] double cumulative_wh(std::string_view p_device_id) const;
  [[nodiscard]] double total_wh() const;
  [[nodiscard]] double total_kwh() const
  {
    return total_wh() / 1000.0;
  }
  [[nodiscard]] double cost_gbp() const
  {
    return total_kwh() * m_tariff;
  }

  [[nodiscard]] double tariff() const noexcept
  {
    return m_tariff;
  }
  void set_tariff(double p_tariff_gbp_per_kwh) noexcept
  {
    m_tariff = p_tariff_gbp_per_kwh;
  }

  [[nodiscard]] const std::map<std::string, double, std::less<>>& joules() const noexcept
  {
    return m_joules;
  }

private:
  std::map<std::string, double, std::less<>> m_joules;
  double m_tariff;
};

/// Energy split by device class, in kWh.
struct energy_totals
{
  double led_kwh = 0.0;
  double fan_kwh = 0.0;
  double other_kwh = 0.0;

  [[nodiscard]] double total_kwh() const noexcept
  {
    return led_kwh + fan_kwh + other_kwh;
  }
};

[[nodiscard]] energy_totals totals_by_class(const energy_ledger& p_ledger,
                                            const hal::hardware_manifest& p_manifest);

/// Every LED and fan at 100 % for `p_elapsed_s`.
[[nodiscard]] energy_totals always_on_totals(const hal::hardware_manifest& p_manifest,
                                             double p_elapsed_s);

/// 100 * (baseline - actual) / baseline, or nullopt when baseline is 0.
[[nodiscard]] std::optional<double> savings_pct(double p_actual, double p_baseline) noexcept;

struct class_savings
{
  std::string name;
  double actual_kwh = 0.0;
  double baseline_kwh = 0.0;
  double actual_cost_gbp = 0.0;
  double baseline_cost_gbp = 0.0;
  std::optional<double> savings_pct;
};

struct savings_report
{
  double elapsed_s = 0.0;
  double tariff_gbp_per_kwh = default_tariff_gbp_per_kwh;
  class_savings led;
  class_savings fan;
  class_savings total;
};

[[nodiscard]] savings_report compare(const energy_totals& p_actual,
                                     const energy_totals& p_baseline,
                                     double p_tariff,
                                     double p_elapsed_s);

/// Ledger against the always-on baseline implied by the manifest. Throws
/// range_error when `p_elapsed_s <= 0`.
[[nodiscard]] savings_report make_savings_report(const energy_ledger& p_ledger,
                                                 const hal::hardware_manifest& p_manifest,
                                                 double p_elapsed_s);

/// Table-shaped plain text.
[[nodiscard]] std::string to_text(const savings_report& p_report);
[[nodiscard]] std::string to_json(const savings_report& p_report);

// -- energy_log.csv ---------------------------------------------------------

inline constexpr std::string_view csv_header =
  "timestamp,room,temp_c,humidity_pct,lux,motion,smoke,led_duty_pct,"
  "fan_duty_pct,led_wh,fan_wh,cum_kwh,cum_cost_gbp";

/// One row of energy_log.csv. `cum_kwh` / `cum_cost_gbp` cover the whole
/// installation at the log instant; `led_wh` / `fan_wh` are this room's
/// energy since the previous row.
struct energy_record
{
  std::string timestamp;
  hal::room_id room = 0;
  double temp_c = 0.0;
  double humidity_pct = 0.0;
  double lux = 0.0;
  bool motion = false;
  std::optional<bool> smoke;
  int led_duty_pct = 0;
  int fan_duty_pct = 0;
  double led_wh = 0.0;
  double fan_wh = 0.0;
  double cum_kwh = 0.0;
  double cum_cost_gbp = 0.0;

  friend bool operator==(const energy_record&, const energy_record&) = default;
};

/// Fixed-precision CSV line without the trailing newline.
[[nodiscard]] std::string format_csv_row(const energy_record& p_record);

/// Throws parse_error on a wrong field count or non-numeric field.
[[nodiscard]] energy_record parse_csv_row(std::string_view p_line);

/// Whole file, header included. Throws parse_error on a header mismatch, a
/// malformed row or a missing final newline (truncated write).
[[nodiscard]] std::vector<energy_record> parse_csv(std::string_view p_text);

/// Append-and-flush writer for energy_log.csv. Guarded by a mutex so a
/// concurrent export never sees a half-written row.
class csv_log_writer
{
public:
  /// Creates the file with the header when absent.
  explicit csv_log_writer(std::filesystem::path p_path);

  void append(std::span<const energy_record> p_records);

  /// Current on-disk bytes.
  [[nodiscard]] std::string contents() const;

  [[nodiscard]] const std::filesystem::path& path() const noexcept
  {
    return m_path;
  }

private:
  std::filesystem::path m_path;
  mutable std::mutex m_mutex;
};

/// Builds the per-room rows for one logging instant and tracks the energy
/// already attributed to earlier rows.
class interval_logger
{
public:
  explicit interval_logger(const hal::hardware_manifest& p_manifest)
    : m_manifest(&p_manifest)
  {
  }

  /// One record per room, in room-id order. Frames supply the sensor
  /// columns, device states the duty columns.
  [[nodiscard]] std::vector<energy_record> make_records(
    std::string_view p_timestamp,
    std::span<const hal::sensor_frame> p_frames,
    std::span<const engine::device_state> p_devices,
    const energy_ledger& p_ledger);

private:
  const hal::hardware_manifest* m_manifest;
  std::map<std::string, double, std::less<>> m_logged_wh;
};

/// Builds the rows with `p_logger`, appends them with `p_writer` and returns
/// them. I/O failures propagate as io_error after the rows are built, so the
/// interval bookkeeping stays consistent.
std::vector<energy_record> log_tick(std::string_view p_timestamp,
                                    std::span<const hal::sensor_frame> p_frames,
                                    std::span<const engine::device_state> p_devices,
                                    const energy_ledger& p_ledger,
                                    interval_logger& p_logger,
                                    csv_log_writer& p_writer);

}  // namespace smarthome::energy
