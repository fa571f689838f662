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

#include <smarthome/energy.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <smarthome/error.hpp>

#include "json_util.hpp"

namespace smarthome::energy {
namespace {

constexpr std::size_t csv_field_count = 13;

std::vector<std::string_view> split_fields(std::string_view p_line)
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = p_line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(p_line.substr(start));
      break;
    }
    fields.push_back(p_line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view p_field, std::string_view p_name)
{
  double value = 0.0;
  const auto* end = p_field.data() + p_field.size();
  const auto [ptr, ec] = std::from_chars(p_field.data(), end, value);
  if (p_field.empty() || ec != std::errc{} || ptr != end) {
    throw parse_error("energy_log: bad " + std::string(p_name) + " '" +
                      std::string(p_field) + "'");
  }
  return value;
}

int parse_int(std::string_view p_field, std::string_view p_name)
{
  int value = 0;
  const auto* end = p_field.data() + p_field.size();
  const auto [ptr, ec] = std::from_chars(p_field.data(), end, value);
  if (p_field.empty() || ec != std::errc{} || ptr != end) {
    throw parse_error("energy_log: bad " + std::string(p_name) + " '" +
                      std::string(p_field) + "'");
  }
  return value;
}

bool parse_flag(std::string_view p_field, std::string_view p_name)
{
  if (p_field == "0") {
    return false;
  }
  if (p_field == "1") {
    return true;
  }
  throw parse_error("energy_log: bad " + std::string(p_name) + " '" +
                    std::string(p_field) + "'");
}

nlohmann::json class_to_json(const class_savings& p_class)
{
  nlohmann::json node{
    { "actual_kwh", p_class.actual_kwh },
    { "baseline_kwh", p_class.baseline_kwh },
    { "actual_cost_gbp", round_currency(p_class.actual_cost_gbp) },
    { "baseline_cost_gbp", round_currency(p_class.baseline_cost_gbp) },
  };
  node["savings_pct"] =
    p_class.savings_pct ? nlohmann::json(*p_class.savings_pct) : nlohmann::json(nullptr);
  return node;
}

class_savings make_class(std::string p_name,
                         double p_actual_kwh,
                         double p_baseline_kwh,
                         double p_tariff)
{
  return { .name = std::move(p_name),
           .actual_kwh = p_actual_kwh,
           .baseline_kwh = p_baseline_kwh,
           .actual_cost_gbp = p_actual_kwh * p_tariff,
           .baseline_cost_gbp = p_baseline_kwh * p_tariff,
           .savings_pct = savings_pct(p_actual_kwh, p_baseline_kwh) };
}

}  // namespace

double round_currency(double p_value) noexcept
{
  return std::floor(p_value * 1000.0 + 0.5 + 1e-9) / 1000.0;
}

double cost_of(double p_kwh, double p_tariff) noexcept
{
  return round_currency(p_kwh * p_tariff);
}

void energy_ledger::accumulate(std::string_view p_device_id,
                               double p_watts,
                               double p_dt_s)
{
  if (!(p_dt_s > 0.0)) {
    throw range_error("accumulate: dt must be > 0");
  }
  if (!(p_watts >= 0.0)) {
    throw range_error("accumulate: watts must be >= 0");
  }
  auto it = m_joules.find(p_device_id);
  if (it == m_joules.end()) {
    it = m_joules.emplace(std::string(p_device_id), 0.0).first;
  }
  it->second += p_watts * p_dt_s;
}

double energy_ledger::cumulative_wh(std::string_view p_device_id) const
{
  const auto it = m_joules.find(p_device_id);
  return it == m_joules.end() ? 0.0 : it->second / 3600.0;
}

double energy_ledger::total_wh() const
{
  double joules = 0.0;
  for (const auto& [id, value] : m_joules) {
    joules += value;
  }
  return joules / 3600.0;
}

energy_totals totals_by_class(const energy_ledger& p_ledger,
                              const hal::hardware_manifest& p_manifest)
{
  energy_totals totals;
  for (const auto& [id, joules] : p_ledger.joules()) {
    const double kwh = joules / 3600.0 / 1000.0;
    const auto* device = p_manifest.find_device(id);
    if (device != nullptr && device->kind == hal::device_kind::led) {
      totals.led_kwh += kwh;
    } else if (device != nullptr && device->kind == hal::device_kind::fan) {
      totals.fan_kwh += kwh;
    } else {
      totals.other_kwh += kwh;
    }
  }
  return totals;
}

energy_totals always_on_totals(const hal::hardware_manifest& p_manifest,
                               double p_elapsed_s)
{
  energy_totals totals;
  for (const auto* device : p_manifest.devices()) {
    const double kwh = device->rated_watts * p_elapsed_s / 3600.0 / 1000.0;
    if (device->kind == hal::device_kind::led) {
      totals.led_kwh += kwh;
    } else if (device->kind == hal::device_kind::fan) {
      totals.fan_kwh += kwh;
    }
  }
  return totals;
}

std::optional<double> savings_pct(double p_actual, double p_baseline) noexcept
{
  if (!(p_baseline > 0.0)) {
    return std::nullopt;
  }
  return 100.0 * (p_baseline - p_actual) / p_baseline;
}

savings_report compare(const energy_totals& p_actual,
                       const energy_totals& p_baseline,
                       double p_tariff,
                       double p_elapsed_s)
{
  return {
    .elapsed_s = p_elapsed_s,
    .tariff_gbp_per_kwh = p_tariff,
    .led = make_class("led", p_actual.led_kwh, p_baseline.led_kwh, p_tariff),
    .fan = make_class("fan", p_actual.fan_kwh, p_baseline.fan_kwh, p_tariff),
    .total = make_class("total", p_actual.total_kwh(), p_baseline.total_kwh(), p_tariff),
  };
}

savings_report make_savings_report(const energy_ledger& p_ledger,
                                   const hal::hardware_manifest& p_manifest,
                                   double p_elapsed_s)
{
  if (!(p_elapsed_s > 0.0)) {
    throw range_error("savings report needs elapsed time > 0");
  }
  return compare(totals_by_class(p_ledger, p_manifest),
                 always_on_totals(p_manifest, p_elapsed_s),
                 p_ledger.tariff(),
                 p_elapsed_s);
}

std::string to_text(const savings_report& p_report)
{
  auto pct = [](const std::optional<double>& p_value) {
    char buffer[32];
    if (!p_value) {
      return std::string("n/a");
    }
    std::snprintf(buffer, sizeof(buffer), "%.1f%%", *p_value);
    return std::string(buffer);
  };
  char line[160];
  std::string text;
  std::snprintf(line, sizeof(line), "Energy comparison over %.2f h at %.3f GBP/kWh\n",
                p_report.elapsed_s / 3600.0, p_report.tariff_gbp_per_kwh);
  text += line;
  std::snprintf(line, sizeof(line), "%-20s %12s %12s\n", "Configuration", "Always On", "Smart System");
  text += line;
  std::snprintf(line, sizeof(line), "%-20s %12.3f %12.3f\n", "LED Energy (kWh)",
                p_report.led.baseline_kwh, p_report.led.actual_kwh);
  text += line;
  std::snprintf(line, sizeof(line), "%-20s %12.3f %12.3f\n", "Fan Energy (kWh)",
                p_report.fan.baseline_kwh, p_report.fan.actual_kwh);
  text += line;
  std::snprintf(line, sizeof(line), "%-20s %12.3f %12.3f\n", "Total Energy (kWh)",
                p_report.total.baseline_kwh, p_report.total.actual_kwh);
  text += line;
  std::snprintf(line, sizeof(line), "%-20s %12.3f %12.3f\n", "Cost (GBP)",
                round_currency(p_report.total.baseline_cost_gbp),
                round_currency(p_report.total.actual_cost_gbp));
  text += line;
  std::snprintf(line, sizeof(line), "%-20s %12s %12s\n", "Savings (%)", "-",
                pct(p_report.total.savings_pct).c_str());
  text += line;
  return text;
}

std::string to_json(const savings_report& p_report)
{
  const nlohmann::json root{
    { "elapsed_s", p_report.elapsed_s },
    { "tariff_gbp_per_kwh", p_report.tariff_gbp_per_kwh },
    { "led", class_to_json(p_report.led) },
    { "fan", class_to_json(p_report.fan) },
    { "total", class_to_json(p_report.total) },
  };
  return root.dump(2) + "\n";
}

std::string format_csv_row(const energy_record& p_record)
{
  const char* smoke = !p_record.smoke ? "" : (*p_record.smoke ? "1" : "0");
  char buffer[256];
  std::snprintf(buffer,
                sizeof(buffer),
                "%s,%d,%.2f,%.2f,%.1f,%d,%s,%d,%d,%.6f,%.6f,%.6f,%.3f",
                p_record.timestamp.c_str(),
                p_record.room,
                p_record.temp_c,
                p_record.humidity_pct,
                p_record.lux,
                p_record.motion ? 1 : 0,
                smoke,
                p_record.led_duty_pct,
                p_record.fan_duty_pct,
                p_record.led_wh,
                p_record.fan_wh,
                p_record.cum_kwh,
                round_currency(p_record.cum_cost_gbp));
  return buffer;
}

energy_record parse_csv_row(std::string_view p_line)
{
  const auto fields = split_fields(p_line);
  if (fields.size() != csv_field_count) {
    throw parse_error("energy_log: expected " + std::to_string(csv_field_count) +
                      " fields, got " + std::to_string(fields.size()));
  }
  energy_record record;
  record.timestamp = std::string(fields[0]);
  if (record.timestamp.empty()) {
    throw parse_error("energy_log: empty timestamp");
  }
  record.room = parse_int(fields[1], "room");
  record.temp_c = parse_double(fields[2], "temp_c");
  record.humidity_pct = parse_double(fields[3], "humidity_pct");
  record.lux = parse_double(fields[4], "lux");
  record.motion = parse_flag(fields[5], "motion");
  if (!fields[6].empty()) {
    record.smoke = parse_flag(fields[6], "smoke");
  }
  record.led_duty_pct = parse_int(fields[7], "led_duty_pct");
  record.fan_duty_pct = parse_int(fields[8], "fan_duty_pct");
  record.led_wh = parse_double(fields[9], "led_wh");
  record.fan_wh = parse_double(fields[10], "fan_wh");
  record.cum_kwh = parse_double(fields[11], "cum_kwh");
  record.cum_cost_gbp = parse_double(fields[12], "cum_cost_gbp");
  return record;
}

std::vector<energy_record> parse_csv(std::string_view p_text)
{
  if (p_text.empty()) {
    throw parse_error("energy_log: empty file");
  }
  if (p_text.back() != '\n') {
    throw parse_error("energy_log: missing final newline (truncated)");
  }
  std::vector<energy_record> records;
  std::size_t start = 0;
  bool header = true;
  while (start < p_text.size()) {
    const auto end = p_text.find('\n', start);
    const auto line = p_text.substr(start, end - start);
    if (header) {
      if (line != csv_header) {
        throw parse_error("energy_log: header mismatch");
      }
      header = false;
    } else {
      records.push_back(parse_csv_row(line));
    }
    start = end + 1;
  }
  return records;
}

csv_log_writer::csv_log_writer(std::filesystem::path p_path)
  : m_path(std::move(p_path))
{
  std::error_code ec;
  if (!std::filesystem::exists(m_path, ec) || std::filesystem::file_size(m_path, ec) == 0) {
    std::ofstream out(m_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw io_error("cannot create " + m_path.string());
    }
    out << csv_header << '\n';
    out.flush();
    if (!out) {
      throw io_error("cannot write header to " + m_path.string());
    }
  }
}

void csv_log_writer::append(std::span<const energy_record> p_records)
{
  std::string block;
  for (const auto& record : p_records) {
    block += format_csv_row(record);
    block += '\n';
  }
  std::lock_guard lock(m_mutex);
  std::ofstream out(m_path, std::ios::binary | std::ios::app);
  if (!out) {
    throw io_error("cannot open " + m_path.string() + " for append");
  }
  out.write(block.data(), static_cast<std::streamsize>(block.size()));
  out.flush();
  if (!out) {
    throw io_error("write to " + m_path.string() + " failed");
  }
}

std::string csv_log_writer::contents() const
{
  std::lock_guard lock(m_mutex);
  return detail::read_file(m_path);
}

std::vector<energy_record> interval_logger::make_records(
  std::string_view p_timestamp,
  std::span<const hal::sensor_frame> p_frames,
  std::span<const engine::device_state> p_devices,
  const energy_ledger& p_ledger)
{
  std::vector<energy_record> records;
  for (const auto& room : m_manifest->rooms) {
    const auto frame = std::find_if(p_frames.begin(), p_frames.end(), [&](const auto& f) {
      return f.room == room.id;
    });
    if (frame == p_frames.end()) {
      throw validation_error("frames", "no frame for room " + std::to_string(room.id));
    }
    energy_record record{
      .timestamp = std::string(p_timestamp),
      .room = room.id,
      .temp_c = frame->temp_c,
      .humidity_pct = frame->humidity_pct,
      .lux = frame->lux,
      .motion = frame->motion,
      .smoke = frame->smoke,
    };
    bool led_seen = false;
    bool fan_seen = false;
    for (const auto& device : room.devices) {
      if (device.kind == hal::device_kind::buzzer) {
        continue;
      }
      const double cumulative = p_ledger.cumulative_wh(device.id);
      auto& logged = m_logged_wh[device.id];
      const double interval_wh = cumulative - logged;
      logged = cumulative;

      const auto state = std::find_if(p_devices.begin(), p_devices.end(), [&](const auto& d) {
        return d.device_id == device.id;
      });
      const int duty = state == p_devices.end() ? 0 : state->applied_duty_pct;
      // Rooms with several devices of a kind report the first one's duty.
      if (device.kind == hal::device_kind::led) {
        record.led_wh += interval_wh;
        if (!led_seen) {
          record.led_duty_pct = duty;
          led_seen = true;
        }
      } else {
        record.fan_wh += interval_wh;
        if (!fan_seen) {
          record.fan_duty_pct = duty;
          fan_seen = true;
        }
      }
    }
    record.cum_kwh = p_ledger.total_kwh();
    record.cum_cost_gbp = p_ledger.cost_gbp();
    records.push_back(std::move(record));
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.room < b.room;
  });
  return records;
}

std::vector<energy_record> log_tick(std::string_view p_timestamp,
                                    std::span<const hal::sensor_frame> p_frames,
                                    std::span<const engine::device_state> p_devices,
                                    const energy_ledger& p_ledger,
                                    interval_logger& p_logger,
                                    csv_log_writer& p_writer)
{
  auto records = p_logger.make_records(p_timestamp, p_frames, p_devices, p_ledger);
  p_writer.append(records);
  return records;
}

}  // namespace smarthome::energy
