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

#include <smarthome/clock.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>

namespace smarthome {

std::string simulated_clock::timestamp() const
{
  return timestamp_at(m_now);
}

std::string simulated_clock::timestamp_at(envsim::seconds p_t) const
{
  return format_iso8601(m_epoch + static_cast<std::int64_t>(std::floor(p_t)));
}

std::string format_iso8601(std::int64_t p_unix_s)
{
  using namespace std::chrono;
  const sys_seconds instant{ seconds{ p_unix_s } };
  const auto day = floor<days>(instant);
  const year_month_day date{ day };
  const hh_mm_ss time{ instant - day };
  char buffer[64];
  std::snprintf(buffer,
                sizeof(buffer),
                "%04d-%02u-%02uT%02ld:%02ld:%02lldZ",
                static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()),
                static_cast<long>(time.hours().count()),
                static_cast<long>(time.minutes().count()),
                static_cast<long long>(time.seconds().count()));
  return buffer;
}

std::optional<std::int64_t> parse_iso8601(std::string_view p_text)
{
  if (!p_text.empty() && p_text.back() == 'Z') {
    p_text.remove_suffix(1);
  }
  if (p_text.size() != 19 || p_text[4] != '-' || p_text[7] != '-' ||
      p_text[10] != 'T' || p_text[13] != ':' || p_text[16] != ':') {
    return std::nullopt;
  }
  auto number = [&](std::size_t p_pos, std::size_t p_len) -> std::optional<int> {
    int value = 0;
    for (std::size_t i = p_pos; i < p_pos + p_len; ++i) {
      const char c = p_text[i];
      if (c < '0' || c > '9') {
        return std::nullopt;
      }
      value = value * 10 + (c - '0');
    }
    return value;
  };
  const auto y = number(0, 4);
  const auto mo = number(5, 2);
  const auto d = number(8, 2);
  const auto h = number(11, 2);
  const auto mi = number(14, 2);
  const auto s = number(17, 2);
  if (!y || !mo || !d || !h || !mi || !s) {
    return std::nullopt;
  }
  using namespace std::chrono;
  const year_month_day date{ year{ *y }, month{ static_cast<unsigned>(*mo) },
                              day{ static_cast<unsigned>(*d) } };
  if (!date.ok() || *h > 23 || *mi > 59 || *s > 59) {
    return std::nullopt;
  }
  const auto since_epoch = sys_days{ date }.time_since_epoch();
  return duration_cast<seconds>(since_epoch).count() + *h * 3600LL +
         *mi * 60LL + *s;
}

}  // namespace smarthome
