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

#include <smarthome/controller.hpp>

#include <algorithm>
#include <cmath>

#include <smarthome/error.hpp>

namespace smarthome {
namespace {

void check_options(const controller_options& p_options,
                   const envsim::scenario& p_scenario)
{
  if (p_options.tick_s < 1) {
    throw validation_error("tick", "must be a whole number of seconds >= 1");
  }
  if (p_options.log_interval_s < p_options.tick_s) {
    throw validation_error("log_interval", "must be >= tick");
  }
  if (p_options.log_interval_s % p_options.tick_s != 0) {
    throw validation_error("log_interval", "must be a multiple of tick");
  }
  if (p_options.duration_s) {
    const double duration = *p_options.duration_s;
    if (!std::isfinite(duration) || duration <= 0.0) {
      throw validation_error("duration", "must be > 0");
    }
    if (duration > p_scenario.duration) {
      throw validation_error("duration",
                             "exceeds scenario duration of " +
                               std::to_string(p_scenario.duration) + " s");
    }
  }
  validate(p_options.settings);
}

}  // namespace

controller::controller(envsim::scenario p_scenario,
                       hal::hardware_manifest p_manifest,
                       controller_options p_options)
  : m_scenario((envsim::validate(p_scenario), std::move(p_scenario)))
  , m_options((check_options(p_options, m_scenario), std::move(p_options)))
  , m_hardware(std::move(p_manifest), m_scenario, m_options.noise)
  , m_clock(m_scenario.time_scale, m_options.epoch_unix_s)
  , m_settings(m_options.settings)
  , m_interval_logger(m_hardware.manifest())
  , m_ledger(m_options.settings.tariff_gbp_per_kwh)
{
  const double duration = m_options.duration_s.value_or(m_scenario.duration);
  m_total_ticks = static_cast<std::uint64_t>(std::floor(duration / m_options.tick_s));
  if (m_total_ticks == 0) {
    throw validation_error("duration", "shorter than one tick");
  }

  m_devices = engine::initial_device_states(m_hardware.manifest());
  if (m_options.always_on_baseline) {
    for (auto& device : m_devices) {
      if (device.kind != hal::device_kind::buzzer) {
        device.mode = engine::device_mode::on;
      }
    }
  }
  m_pending = { m_devices, m_settings };

  if (!m_options.log_path.empty()) {
    std::error_code ec;
    std::filesystem::remove(m_options.log_path, ec);
    m_writer = std::make_unique<energy::csv_log_writer>(m_options.log_path);
  }

  std::vector<hal::sensor_frame> frames;
  for (const auto& room : m_hardware.manifest().rooms) {
    frames.push_back(m_hardware.read_sensors(room.id, 0.0));
  }
  engine::tick_result idle;
  for (const auto& room : m_hardware.manifest().rooms) {
    idle.rooms.push_back({ room.id, false });
  }
  publish(frames, idle);
}

bool controller::finished() const noexcept
{
  return m_tick.load() >= m_total_ticks;
}

envsim::seconds controller::now() const noexcept
{
  return static_cast<double>(m_tick.load()) * m_options.tick_s;
}

void controller::adopt_pending()
{
  std::lock_guard lock(m_pending_mutex);
  for (std::size_t i = 0; i < m_devices.size(); ++i) {
    m_devices[i].mode = m_pending.devices[i].mode;
    m_devices[i].manual_duty_pct = m_pending.devices[i].manual_duty_pct;
  }
  m_settings = m_pending.settings;
  std::lock_guard ledger_lock(m_ledger_mutex);
  m_ledger.set_tariff(m_settings.tariff_gbp_per_kwh);
}

void controller::step()
{
  if (finished()) {
    return;
  }
  const auto tick_index = m_tick.load();
  const double t = static_cast<double>(tick_index) * m_options.tick_s;

  adopt_pending();

  std::vector<hal::sensor_frame> frames;
  frames.reserve(m_hardware.manifest().rooms.size());
  for (const auto& room : m_hardware.manifest().rooms) {
    frames.push_back(m_hardware.read_sensors(room.id, t));
  }

  auto result = engine::tick(
    t, frames, m_devices, m_settings.thresholds, m_tracker, m_hardware.manifest());
  for (const auto& command : result.commands) {
    m_hardware.apply(command);
  }
  const auto applied = m_hardware.applied_snapshot();
  for (std::size_t i = 0; i < m_devices.size(); ++i) {
    m_devices[i].applied_duty_pct = applied[i].duty_pct;
  }
  m_tracker = result.tracker;

  {
    std::lock_guard lock(m_ledger_mutex);
    for (const auto& device : m_devices) {
      m_ledger.accumulate(device.device_id,
                          energy::instantaneous_power(device.applied_duty_pct,
                                                      device.rated_watts),
                          m_options.tick_s);
    }
  }

  const auto t_end = static_cast<std::int64_t>(t) + m_options.tick_s;
  m_clock.advance(m_options.tick_s);
  m_tick.store(tick_index + 1);

  if (t_end % m_options.log_interval_s == 0) {
    std::vector<energy::energy_record> records;
    {
      std::lock_guard lock(m_ledger_mutex);
      records = m_interval_logger.make_records(
        m_clock.timestamp_at(static_cast<double>(t_end)), frames, m_devices, m_ledger);
    }
    {
      std::lock_guard lock(m_records_mutex);
      for (const auto& record : records) {
        m_records.emplace_back(m_options.epoch_unix_s + t_end, record);
      }
    }
    if (m_writer) {
      try {
        m_writer->append(records);
      } catch (const io_error&) {
        m_log_failures.fetch_add(1);
      }
    }
  }

  publish(frames, result);
}

void controller::run_to_end()
{
  while (!finished()) {
    step();
  }
}

void controller::publish(const std::vector<hal::sensor_frame>& p_frames,
                         const engine::tick_result& p_result)
{
  auto snapshot = std::make_shared<status_snapshot>();
  snapshot->tick = m_tick.load();
  snapshot->t = p_frames.empty() ? 0.0 : p_frames.front().t;
  snapshot->timestamp = m_clock.timestamp_at(snapshot->t);
  snapshot->alarm_active = p_result.alarm_active;
  for (const auto& frame : p_frames) {
    room_status room;
    room.frame = frame;
    for (const auto& decision : p_result.rooms) {
      if (decision.room == frame.room) {
        room.occupied_effective = decision.occupied_effective;
      }
    }
    for (const auto& device : m_devices) {
      const auto* owner = m_hardware.manifest().room_of(device.device_id);
      if (owner != nullptr && owner->id == frame.room) {
        room.devices.push_back(device);
      }
    }
    snapshot->rooms.push_back(std::move(room));
  }
  {
    std::lock_guard lock(m_ledger_mutex);
    snapshot->cum_kwh = m_ledger.total_kwh();
    snapshot->cum_cost_gbp = m_ledger.cost_gbp();
  }
  std::lock_guard lock(m_snapshot_mutex);
  m_snapshot = std::move(snapshot);
}

std::shared_ptr<const status_snapshot> controller::snapshot() const
{
  std::lock_guard lock(m_snapshot_mutex);
  return m_snapshot;
}

std::size_t controller::pending_index(std::string_view p_device_id) const
{
  for (std::size_t i = 0; i < m_pending.devices.size(); ++i) {
    if (m_pending.devices[i].device_id == p_device_id) {
      return i;
    }
  }
  throw not_found_error("unknown device " + std::string(p_device_id));
}

engine::device_state controller::request_mode(std::string_view p_device_id,
                                              engine::device_mode p_mode)
{
  std::lock_guard lock(m_pending_mutex);
  auto& device = m_pending.devices[pending_index(p_device_id)];
  if (device.kind == hal::device_kind::buzzer) {
    throw conflict_error(device.device_id + " is driven by the smoke alarm");
  }
  device.mode = p_mode;
  return device;
}

engine::device_state controller::request_duty(std::string_view p_device_id,
                                              int p_duty_pct)
{
  std::lock_guard lock(m_pending_mutex);
  auto& device = m_pending.devices[pending_index(p_device_id)];
  if (p_duty_pct < 0 || p_duty_pct > 100) {
    throw range_error("duty_pct must be within [0, 100]");
  }
  if (device.mode != engine::device_mode::manual) {
    throw conflict_error(device.device_id + " is not in MANUAL mode");
  }
  device.manual_duty_pct = p_duty_pct;
  return device;
}

tunables controller::request_tunables(const tunables& p_tunables)
{
  validate(p_tunables);
  std::lock_guard lock(m_pending_mutex);
  m_pending.settings = p_tunables;
  return p_tunables;
}

tunables controller::pending_tunables() const
{
  std::lock_guard lock(m_pending_mutex);
  return m_pending.settings;
}

std::vector<energy::energy_record> controller::records_since(
  std::optional<std::int64_t> p_since_unix_s) const
{
  std::vector<energy::energy_record> result;
  std::lock_guard lock(m_records_mutex);
  for (const auto& [unix_s, record] : m_records) {
    if (!p_since_unix_s || unix_s >= *p_since_unix_s) {
      result.push_back(record);
    }
  }
  return result;
}

std::string controller::export_csv() const
{
  return m_writer ? m_writer->contents() : std::string{};
}

energy::energy_totals controller::totals() const
{
  std::lock_guard lock(m_ledger_mutex);
  return energy::totals_by_class(m_ledger, m_hardware.manifest());
}

energy::savings_report controller::report() const
{
  std::lock_guard lock(m_ledger_mutex);
  return energy::make_savings_report(m_ledger, m_hardware.manifest(), now());
}

}  // namespace smarthome
