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

#include <smarthome/envsim.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <smarthome/error.hpp>

#include "json_util.hpp"

namespace smarthome::envsim {
namespace {

struct value_range
{
  double lo;
  double hi;
};

constexpr value_range lux_range{ 0.0, 65535.0 };
constexpr value_range temp_range{ -10.0, 60.0 };
constexpr value_range humidity_range{ 0.0, 100.0 };

void validate_intervals(const std::vector<interval>& p_intervals,
                        const std::string& p_field)
{
  for (std::size_t i = 0; i < p_intervals.size(); ++i) {
    const auto& current = p_intervals[i];
    if (!std::isfinite(current.start) || !std::isfinite(current.end)) {
      throw validation_error(p_field, "non-finite interval bound");
    }
    if (current.start < 0.0) {
      throw validation_error(p_field, "interval starts before t=0");
    }
    if (!(current.start < current.end)) {
      throw validation_error(p_field, "empty or reversed interval");
    }
    if (i > 0) {
      const auto& previous = p_intervals[i - 1];
      if (current.start < previous.start) {
        throw validation_error(p_field, "intervals not sorted");
      }
      if (current.start < previous.end) {
        throw validation_error(p_field, "overlapping intervals");
      }
    }
  }
}

void validate_curve(const curve& p_curve,
                    const std::string& p_field,
                    value_range p_range)
{
  if (p_curve.empty()) {
    throw validation_error(p_field, "curve needs at least one keypoint");
  }
  for (std::size_t i = 0; i < p_curve.size(); ++i) {
    const auto& point = p_curve[i];
    if (!std::isfinite(point.t) || !std::isfinite(point.value)) {
      throw validation_error(p_field, "non-finite keypoint");
    }
    if (point.value < p_range.lo || point.value > p_range.hi) {
      std::ostringstream message;
      message << "value " << point.value << " outside [" << p_range.lo << ", "
              << p_range.hi << "]";
      throw validation_error(p_field, message.str());
    }
    if (i > 0 && !(p_curve[i - 1].t < point.t)) {
      throw validation_error(p_field,
                             "keypoint times not strictly increasing");
    }
  }
}

std::vector<interval> read_intervals(const nlohmann::json& p_node,
                                     const std::string& p_field)
{
  if (!p_node.is_array()) {
    throw validation_error(p_field, "expected an array of [start, end]");
  }
  std::vector<interval> result;
  result.reserve(p_node.size());
  for (const auto& item : p_node) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
        !item[1].is_number()) {
      throw validation_error(p_field, "expected [start, end] pairs");
    }
    result.push_back({ item[0].get<double>(), item[1].get<double>() });
  }
  return result;
}

curve read_curve(const nlohmann::json& p_node, const std::string& p_field)
{
  if (!p_node.is_array()) {
    throw validation_error(p_field, "expected an array of [t, value]");
  }
  curve result;
  result.reserve(p_node.size());
  for (const auto& item : p_node) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
        !item[1].is_number()) {
      throw validation_error(p_field, "expected [t, value] pairs");
    }
    result.push_back({ item[0].get<double>(), item[1].get<double>() });
  }
  return result;
}

nlohmann::json write_intervals(const std::vector<interval>& p_intervals)
{
  auto node = nlohmann::json::array();
  for (const auto& span : p_intervals) {
    node.push_back({ span.start, span.end });
  }
  return node;
}

nlohmann::json write_curve(const curve& p_curve)
{
  auto node = nlohmann::json::array();
  for (const auto& point : p_curve) {
    node.push_back({ point.t, point.value });
  }
  return node;
}

}  // namespace

void validate(const scenario& p_scenario)
{
  if (!std::isfinite(p_scenario.duration) || p_scenario.duration <= 0.0) {
    throw validation_error("duration", "must be > 0");
  }
  if (!std::isfinite(p_scenario.time_scale) || p_scenario.time_scale < 1.0) {
    throw validation_error("time_scale", "must be >= 1");
  }
  if (p_scenario.rooms.size() != scenario_room_count) {
    throw validation_error("rooms", "exactly 2 room scripts required");
  }
  for (std::size_t i = 0; i < p_scenario.rooms.size(); ++i) {
    const auto& room = p_scenario.rooms[i];
    const auto prefix = "rooms[" + std::to_string(i) + "].";
    validate_intervals(room.occupancy_windows, prefix + "occupancy_windows");
    validate_intervals(room.smoke_events, prefix + "smoke_events");
    validate_curve(room.lux_curve, prefix + "lux_curve", lux_range);
    validate_curve(room.temp_curve, prefix + "temp_curve", temp_range);
    validate_curve(
      room.humidity_curve, prefix + "humidity_curve", humidity_range);
  }
}

scenario parse_scenario(std::string_view p_text)
{
  const auto root = detail::parse_json_document(p_text, "scenario");
  if (!root.is_object()) {
    throw parse_error("scenario: top level must be an object");
  }
  detail::reject_unknown_keys(
    root, { "name", "duration", "time_scale", "rooms", "seed" }, "");

  scenario result;
  result.name = detail::require<std::string>(root, "name");
  result.duration = detail::require<double>(root, "duration");
  result.time_scale = root.contains("time_scale")
                        ? detail::require<double>(root, "time_scale")
                        : 1.0;
  result.seed =
    root.contains("seed") ? detail::require<std::uint64_t>(root, "seed") : 0;

  const auto& rooms = detail::require_node(root, "rooms");
  if (!rooms.is_array()) {
    throw validation_error("rooms", "expected an array");
  }
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const auto& node = rooms[i];
    const auto prefix = "rooms[" + std::to_string(i) + "].";
    if (!node.is_object()) {
      throw validation_error("rooms[" + std::to_string(i) + "]",
                             "expected an object");
    }
    detail::reject_unknown_keys(node,
                                { "occupancy_windows",
                                  "lux_curve",
                                  "temp_curve",
                                  "humidity_curve",
                                  "smoke_events" },
                                prefix);
    room_script room;
    room.occupancy_windows =
      read_intervals(node.value("occupancy_windows", nlohmann::json::array()),
                     prefix + "occupancy_windows");
    room.smoke_events =
      read_intervals(node.value("smoke_events", nlohmann::json::array()),
                     prefix + "smoke_events");
    room.lux_curve = read_curve(detail::require_node(node, "lux_curve", prefix),
                                prefix + "lux_curve");
    room.temp_curve = read_curve(
      detail::require_node(node, "temp_curve", prefix), prefix + "temp_curve");
    room.humidity_curve =
      read_curve(detail::require_node(node, "humidity_curve", prefix),
                 prefix + "humidity_curve");
    result.rooms.push_back(std::move(room));
  }

  validate(result);
  return result;
}

scenario load_scenario(const std::filesystem::path& p_path)
{
  return parse_scenario(detail::read_file(p_path));
}

std::string to_json(const scenario& p_scenario)
{
  nlohmann::json root;
  root["name"] = p_scenario.name;
  root["duration"] = p_scenario.duration;
  root["time_scale"] = p_scenario.time_scale;
  root["seed"] = p_scenario.seed;
  auto rooms = nlohmann::json::array();
  for (const auto& room : p_scenario.rooms) {
    rooms.push_back({
      { "occupancy_windows", write_intervals(room.occupancy_windows) },
      { "lux_curve", write_curve(room.lux_curve) },
      { "temp_curve", write_curve(room.temp_curve) },
      { "humidity_curve", write_curve(room.humidity_curve) },
      { "smoke_events", write_intervals(room.smoke_events) },
    });
  }
  root["rooms"] = std::move(rooms);
  return root.dump(2) + "\n";
}

double evaluate(const curve& p_curve, seconds p_t)
{
  if (p_t <= p_curve.front().t) {
    return p_curve.front().value;
  }
  if (p_t >= p_curve.back().t) {
    return p_curve.back().value;
  }
  // First keypoint strictly after t; the one before it is <= t.
  const auto upper = std::upper_bound(
    p_curve.begin(), p_curve.end(), p_t, [](seconds p_value, const keypoint& p) {
      return p_value < p.t;
    });
  const auto lower = std::prev(upper);
  const double fraction = (p_t - lower->t) / (upper->t - lower->t);
  return lower->value + fraction * (upper->value - lower->value);
}

bool inside_any(const std::vector<interval>& p_intervals, seconds p_t)
{
  const auto upper = std::upper_bound(
    p_intervals.begin(),
    p_intervals.end(),
    p_t,
    [](seconds p_value, const interval& p_span) { return p_value < p_span.start; });
  return upper != p_intervals.begin() && std::prev(upper)->contains(p_t);
}

environment_state env_at(const scenario& p_scenario, seconds p_t)
{
  if (!(p_t >= 0.0 && p_t <= p_scenario.duration)) {
    throw range_error("env_at: t=" + std::to_string(p_t) + " outside [0, " +
                      std::to_string(p_scenario.duration) + "]");
  }
  environment_state state;
  state.t = p_t;
  state.rooms.reserve(p_scenario.rooms.size());
  for (const auto& room : p_scenario.rooms) {
    state.rooms.push_back({
      .temp_c = evaluate(room.temp_curve, p_t),
      .humidity_pct = evaluate(room.humidity_curve, p_t),
      .lux = evaluate(room.lux_curve, p_t),
      .occupied = inside_any(room.occupancy_windows, p_t),
      .smoke = inside_any(room.smoke_events, p_t),
    });
  }
  return state;
}

}  // namespace smarthome::envsim
