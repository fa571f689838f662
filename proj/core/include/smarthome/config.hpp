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
#include <optional>
#include <string>
#include <string_view>

#include <smarthome/energy.hpp>
#include <smarthome/engine.hpp>

namespace smarthome {

/// Salted SHA-256 credential record. The plain password is never stored.
struct credentials
{
  std::string user;
  std::string salt_hex;
  std::string sha256_hex;

  [[nodiscard]] static credentials create(std::string_view p_user,
                                          std::string_view p_password);

  /// Constant-time over both fields; no early exit on a user mismatch.
  [[nodiscard]] bool matches(std::string_view p_user,
                             std::string_view p_password) const;

  friend bool operator==(const credentials&, const credentials&) = default;
};

/// Rule parameters plus tariff, as exchanged with /api/thresholds.
struct tunables
{
  engine::thresholds thresholds;
  double tariff_gbp_per_kwh = energy::default_tariff_gbp_per_kwh;

  friend bool operator==(const tunables&, const tunables&) = default;
};

/// Throws validation_error (thresholds invariants plus tariff >= 0).
void validate(const tunables& p_tunables);

/// Merges a JSON object holding any subset of the tunable fields over
/// `p_current`. Unknown fields, wrong types or violated invariants throw
/// validation_error; malformed JSON throws parse_error. Nothing is
/// partially applied.
[[nodiscard]] tunables merge_tunables(const tunables& p_current,
                                      std::string_view p_json_object);

[[nodiscard]] std::string to_json(const tunables& p_tunables);

/// Contents of the service config file.
struct service_config
{
  tunables settings;
  std::optional<credentials> login;

  friend bool operator==(const service_config&, const service_config&) = default;
};

/// Missing file yields defaults.
[[nodiscard]] service_config load_service_config(const std::filesystem::path& p_path);

/// Write-temp-then-rename.
void save_service_config(const std::filesystem::path& p_path,
                         const service_config& p_config);

/// Random bytes as lowercase hex.
[[nodiscard]] std::string random_hex(std::size_t p_bytes);

}  // namespace smarthome
