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
#include <optional>
#include <string>
#include <string_view>

#include <smarthome/envsim.hpp>

namespace smarthome {

/// Unix time (UTC) that simulated t = 0 maps to: 2025-07-15T08:00:00Z.
inline constexpr std::int64_t default_epoch_unix_s = 1752566400;

/// Monotone simulated time. `scale` is simulated seconds per wall second and
/// only matters to real-time pacing.
class simulated_clock
{
public:
  explicit simulated_clock(double p_scale = 1.0,
                           std::int64_t p_epoch_unix_s = default_epoch_unix_s)
    : m_scale(p_scale)
    , m_epoch(p_epoch_unix_s)
  {
  }

  [[nodiscard]] envsim::seconds now() const noexcept
  {
    return m_now;
  }
  [[nodiscard]] double scale() const noexcept
  {
    return m_scale;
  }
  [[nodiscard]] std::int64_t epoch_unix_s() const noexcept
  {
    return m_epoch;
  }

  /// Negative steps are ignored.
  void advance(envsim::seconds p_dt) noexcept
  {
    if (p_dt > 0.0) {
      m_now += p_dt;
    }
  }

  [[nodiscard]] std::string timestamp() const;
  [[nodiscard]] std::string timestamp_at(envsim::seconds p_t) const;

private:
  double m_scale;
  std::int64_t m_epoch;
  envsim::seconds m_now = 0.0;
};

/// "YYYY-MM-DDTHH:MM:SSZ", whole seconds (fractions truncated).
[[nodiscard]] std::string format_iso8601(std::int64_t p_unix_s);

/// Accepts "YYYY-MM-DDTHH:MM:SS" with an optional trailing "Z".
[[nodiscard]] std::optional<std::int64_t> parse_iso8601(std::string_view p_text);

}  // namespace smarthome
