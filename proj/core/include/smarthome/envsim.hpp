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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace smarthome::envsim {

/// Simulated seconds since the start of a scenario.
using seconds = double;

/// Half-open time interval [start, end).
struct interval
{
  seconds start = 0.0;
  seconds end = 0.0;

  [[nodiscard]] constexpr bool contains(seconds p_t) const noexcept
  {
    return start <= p_t && p_t < end;
  }

  friend bool operator==(const interval&, const interval&) = default;
};

struct keypoint
{
  seconds t = 0.0;
  double value = 0.0;

  friend bool operator==(const keypoint&, const keypoint&) = default;
};

/// Piecewise-linear curve through strictly increasing keypoints. Values are
/// held constant before the first and after the last keypoint.
using curve = std::vector<keypoint>;

struct room_script
{
  std::vector<interval> occupancy_windows;
  curve lux_curve;
  curve temp_curve;
  curve humidity_curve;
  std::vector<interval> smoke_events;

  friend bool operator==(const room_script&, const room_script&) = default;
};

/// Scripted environment timeline for both rooms. Room ids are 1-based
/// positions in `rooms`.
struct scenario
{
  std::string name;
  seconds duration = 0.0;
  double time_scale = 1.0;
  std::vector<room_script> rooms;
  std::uint64_t seed = 0;

  friend bool operator==(const scenario&, const scenario&) = default;
};

inline constexpr std::size_t scenario_room_count = 2;

struct room_conditions
{
  double temp_c = 0.0;
  double humidity_pct = 0.0;
  double lux = 0.0;
  bool occupied = false;
  bool smoke = false;

  friend bool operator==(const room_conditions&,
                         const room_conditions&) = default;
};

struct environment_state
{
  seconds t = 0.0;
  std::vector<room_conditions> rooms;

  friend bool operator==(const environment_state&,
                         const environment_state&) = default;
};

/// Throws validation_error naming the first offending field.
void validate(const scenario& p_scenario);

/// Parses and validates scenario text. Throws parse_error on malformed input.
[[nodiscard]] scenario parse_scenario(std::string_view p_text);

[[nodiscard]] scenario load_scenario(const std::filesystem::path& p_path);

/// Serialises to the on-disk JSON form accepted by parse_scenario.
[[nodiscard]] std::string to_json(const scenario& p_scenario);

/// Linear interpolation with hold-extrapolation. `p_curve` must be non-empty.
[[nodiscard]] double evaluate(const curve& p_curve, seconds p_t);

[[nodiscard]] bool inside_any(const std::vector<interval>& p_intervals,
                              seconds p_t);

/// Ground-truth conditions for every room at `p_t`. Throws range_error when
/// `p_t` lies outside [0, duration].
[[nodiscard]] environment_state env_at(const scenario& p_scenario, seconds p_t);

/// Frozen 12 hour two-room scenario used by the acceptance suite. The same
/// content ships as data/reference_scenario.json.
[[nodiscard]] scenario builtin_reference_scenario();

}  // namespace smarthome::envsim
