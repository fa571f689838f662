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

#include <doctest.h>

#include <smarthome/clock.hpp>

using namespace smarthome;

TEST_CASE("default epoch is the morning start")
{
  CHECK(format_iso8601(default_epoch_unix_s) == "2025-07-15T08:00:00Z");
  CHECK(format_iso8601(default_epoch_unix_s + 43200) == "2025-07-15T20:00:00Z");
  CHECK(format_iso8601(951868799) == "2000-02-29T23:59:59Z");
  CHECK(format_iso8601(0) == "1970-01-01T00:00:00Z");
}

TEST_CASE("simulated clock advances monotonically")
{
  simulated_clock clock(3600.0);
  CHECK(clock.now() == 0.0);
  CHECK(clock.scale() == 3600.0);
  clock.advance(1.0);
  clock.advance(-5.0);
  clock.advance(0.0);
  CHECK(clock.now() == 1.0);
  CHECK(clock.timestamp() == "2025-07-15T08:00:01Z");
  CHECK(clock.timestamp_at(30.9) == "2025-07-15T08:00:30Z");

  simulated_clock shifted(1.0, 1000);
  CHECK(shifted.timestamp_at(0.0) == format_iso8601(1000));
}

TEST_CASE("ISO-8601 parsing")
{
  CHECK(parse_iso8601("2025-07-15T08:00:00Z") == default_epoch_unix_s);
  CHECK(parse_iso8601("2025-07-15T08:00:30") == default_epoch_unix_s + 30);
  CHECK(parse_iso8601("2000-02-29T23:59:59Z") == 951868799);
  for (const char* bad : { "", "yesterday", "2025-07-15", "2025-13-01T00:00:00Z",
                           "2025-02-30T00:00:00Z", "2025-07-15T24:00:00Z",
                           "2025-07-15 08:00:00Z", "2025-07-15T08:00:0xZ" }) {
    CHECK_FALSE_MESSAGE(parse_iso8601(bad).has_value(), bad);
  }
}

TEST_CASE("property: format and parse are inverse")
{
  for (std::int64_t t = 0; t < 4'000'000'000; t += 7'654'321) {
    REQUIRE(parse_iso8601(format_iso8601(t)) == t);
  }
}
