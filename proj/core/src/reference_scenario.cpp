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

namespace smarthome::envsim {

// A warm, humid 12 hour day starting at 08:00. Both rooms alternate between
// occupied and vacant blocks; light peaks around midday, temperature and
// humidity cross every fan tier. Room 2 sees one short smoke event.
//
// Frozen: the acceptance suite depends on these numbers. Changing them
// requires regenerating data/reference_scenario.json with
// `smarthome scenario --dump-reference`.
scenario builtin_reference_scenario()
{
  constexpr seconds hour = 3600.0;

  room_script living;
  living.occupancy_windows = {
    { 0.0 * hour, 1.5 * hour },  { 2.0 * hour, 3.5 * hour },
    { 4.5 * hour, 6.5 * hour },  { 7.25 * hour, 9.0 * hour },
    { 9.75 * hour, 10.5 * hour }, { 11.25 * hour, 12.0 * hour },
  };
  living.lux_curve = {
    { 0.0 * hour, 80.0 },    { 1.5 * hour, 450.0 },  { 3.0 * hour, 1500.0 },
    { 4.5 * hour, 2400.0 },  { 6.0 * hour, 2600.0 }, { 7.0 * hour, 1700.0 },
    { 9.0 * hour, 700.0 },   { 10.5 * hour, 150.0 }, { 11.0 * hour, 60.0 },
    { 12.0 * hour, 40.0 },
  };
  living.temp_curve = {
    { 0.0 * hour, 23.0 },  { 1.0 * hour, 25.5 },  { 2.0 * hour, 28.5 },
    { 3.0 * hour, 31.0 },  { 8.0 * hour, 32.5 },  { 9.5 * hour, 30.5 },
    { 10.5 * hour, 28.0 }, { 11.5 * hour, 26.0 }, { 12.0 * hour, 25.0 },
  };
  living.humidity_curve = {
    { 0.0 * hour, 62.0 },  { 2.5 * hour, 72.0 }, { 8.5 * hour, 78.0 },
    { 10.0 * hour, 69.0 }, { 12.0 * hour, 64.0 },
  };

  room_script kitchen;
  kitchen.occupancy_windows = {
    { 0.5 * hour, 2.0 * hour },   { 2.5 * hour, 4.0 * hour },
    { 5.0 * hour, 7.0 * hour },   { 7.5 * hour, 9.25 * hour },
    { 10.0 * hour, 11.0 * hour }, { 11.5 * hour, 12.0 * hour },
  };
  kitchen.lux_curve = {
    { 0.0 * hour, 60.0 },   { 2.0 * hour, 300.0 },  { 4.0 * hour, 1200.0 },
    { 5.5 * hour, 2150.0 }, { 6.5 * hour, 2200.0 }, { 8.0 * hour, 1000.0 },
    { 10.0 * hour, 250.0 }, { 11.0 * hour, 90.0 },  { 12.0 * hour, 30.0 },
  };
  kitchen.temp_curve = {
    { 0.0 * hour, 23.5 },  { 1.0 * hour, 26.0 },  { 2.0 * hour, 29.5 },
    { 3.0 * hour, 31.5 },  { 8.5 * hour, 33.0 },  { 10.0 * hour, 30.5 },
    { 11.0 * hour, 27.5 }, { 12.0 * hour, 25.5 },
  };
  kitchen.humidity_curve = {
    { 0.0 * hour, 65.0 },  { 2.0 * hour, 74.0 }, { 9.0 * hour, 80.0 },
    { 10.5 * hour, 68.0 }, { 12.0 * hour, 66.0 },
  };
  kitchen.smoke_events = { { 6.0 * hour, 6.0 * hour + 120.0 } };

  return scenario{
    .name = "reference-12h",
    .duration = 12.0 * hour,
    .time_scale = 3600.0,
    .rooms = { std::move(living), std::move(kitchen) },
    .seed = 20251014,
  };
}

}  // namespace smarthome::envsim
