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

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <smarthome/config.hpp>
#include <smarthome/controller.hpp>

namespace smarthome::api {

using clock_type = std::chrono::steady_clock;

enum class login_outcome
{
  ok,
  rejected,
  throttled,
};

struct login_result
{
  login_outcome outcome = login_outcome::rejected;
  std::string token;
};

/// Opaque bearer tokens with a fixed lifetime. After `max_failures`
/// consecutive bad logins every attempt is refused until `throttle_delay`
/// has passed since the last failure.
class session_store
{
public:
  struct options
  {
    std::chrono::seconds lifetime{ std::chrono::hours(24) };
    int max_failures = 5;
    std::chrono::milliseconds throttle_delay{ 2000 };
    /// Injectable for tests.
    std::function<clock_type::time_point()> now = [] { return clock_type::now(); };
  };

  explicit session_store(credentials p_credentials)
    : session_store(std::move(p_credentials), options{})
  {
  }
  session_store(credentials p_credentials, options p_options);

  login_result login(std::string_view p_user, std::string_view p_password);

  /// False when the token was unknown or already expired.
  bool logout(std::string_view p_token);

  [[nodiscard]] bool valid(std::string_view p_token);

private:
  credentials m_credentials;
  options m_options;
  std::mutex m_mutex;
  std::map<std::string, clock_type::time_point, std::less<>> m_sessions;
  int m_consecutive_failures = 0;
  clock_type::time_point m_last_failure{};
};

struct server_options
{
  /// Thresholds and credentials are persisted here; empty disables
  /// persistence.
  std::filesystem::path config_path;
  /// Static files served under "/" when set (the dashboard build).
  std::filesystem::path web_root;
  session_store::options sessions;
};

/// JSON control surface over a controller. Handlers only read snapshots and
/// queue pending changes; they never touch the tick pipeline directly.
class server
{
public:
  server(controller& p_controller, credentials p_credentials, server_options p_options);
  ~server();

  server(const server&) = delete;
  server& operator=(const server&) = delete;

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Throws io_error when the bind fails.
  int start(const std::string& p_host, int p_port);
  void stop();

  [[nodiscard]] int port() const noexcept;

private:
  struct impl;
  std::unique_ptr<impl> m_impl;
};

/// JSON encodings shared by the handlers and tests.
[[nodiscard]] std::string to_json(const status_snapshot& p_snapshot);
[[nodiscard]] std::string to_json(const engine::device_state& p_device);
[[nodiscard]] std::string to_json(std::span<const energy::energy_record> p_records);

}  // namespace smarthome::api
