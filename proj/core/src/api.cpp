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

#include <smarthome/api.hpp>

#include <thread>

#include <httplib.h>

#include <smarthome/error.hpp>

#include "json_util.hpp"

namespace smarthome::api {
namespace {

using nlohmann::json;

json device_node(const engine::device_state& p_device)
{
  return { { "id", p_device.device_id },
           { "kind", std::string(hal::to_string(p_device.kind)) },
           { "mode", std::string(engine::to_string(p_device.mode)) },
           { "manual_duty_pct", p_device.manual_duty_pct },
           { "applied_duty_pct", p_device.applied_duty_pct },
           { "rated_watts", p_device.rated_watts } };
}

json record_node(const energy::energy_record& p_record)
{
  json node{ { "timestamp", p_record.timestamp },
             { "room", p_record.room },
             { "temp_c", p_record.temp_c },
             { "humidity_pct", p_record.humidity_pct },
             { "lux", p_record.lux },
             { "motion", p_record.motion ? 1 : 0 },
             { "led_duty_pct", p_record.led_duty_pct },
             { "fan_duty_pct", p_record.fan_duty_pct },
             { "led_wh", p_record.led_wh },
             { "fan_wh", p_record.fan_wh },
             { "cum_kwh", p_record.cum_kwh },
             { "cum_cost_gbp", energy::round_currency(p_record.cum_cost_gbp) } };
  node["smoke"] = p_record.smoke ? json(*p_record.smoke ? 1 : 0) : json(nullptr);
  return node;
}

void send_json(httplib::Response& p_response, int p_status, const json& p_body)
{
  p_response.status = p_status;
  p_response.set_content(p_body.dump(), "application/json");
}

void send_error(httplib::Response& p_response,
                int p_status,
                std::string_view p_message,
                std::string_view p_field = {})
{
  json body{ { "error", std::string(p_message) } };
  if (!p_field.empty()) {
    body["field"] = std::string(p_field);
  }
  send_json(p_response, p_status, body);
}

/// Parses a JSON object body and checks that only `p_allowed` keys appear.
/// Sends 422 and returns nullopt on failure.
std::optional<json> object_body(const httplib::Request& p_request,
                                httplib::Response& p_response,
                                std::initializer_list<std::string_view> p_allowed)
{
  json body;
  try {
    body = detail::parse_json_document(p_request.body, "body");
  } catch (const parse_error& e) {
    send_error(p_response, 422, e.what());
    return std::nullopt;
  }
  if (!body.is_object()) {
    send_error(p_response, 422, "expected a JSON object");
    return std::nullopt;
  }
  try {
    detail::reject_unknown_keys(body, p_allowed, "");
  } catch (const validation_error& e) {
    send_error(p_response, 422, e.what(), e.field());
    return std::nullopt;
  }
  return body;
}

std::string bearer_token(const httplib::Request& p_request)
{
  const auto header = p_request.get_header_value("Authorization");
  constexpr std::string_view prefix = "Bearer ";
  if (header.size() <= prefix.size() || header.compare(0, prefix.size(), prefix) != 0) {
    return {};
  }
  return header.substr(prefix.size());
}

}  // namespace

session_store::session_store(credentials p_credentials, options p_options)
  : m_credentials(std::move(p_credentials))
  , m_options(std::move(p_options))
{
}

login_result session_store::login(std::string_view p_user, std::string_view p_password)
{
  std::lock_guard lock(m_mutex);
  const auto now = m_options.now();
  if (m_consecutive_failures >= m_options.max_failures &&
      now - m_last_failure < m_options.throttle_delay) {
    return { login_outcome::throttled, {} };
  }
  if (!m_credentials.matches(p_user, p_password)) {
    ++m_consecutive_failures;
    m_last_failure = now;
    return { login_outcome::rejected, {} };
  }
  m_consecutive_failures = 0;
  auto token = random_hex(32);
  m_sessions[token] = now + m_options.lifetime;
  return { login_outcome::ok, std::move(token) };
}

bool session_store::logout(std::string_view p_token)
{
  std::lock_guard lock(m_mutex);
  const auto it = m_sessions.find(p_token);
  if (it == m_sessions.end()) {
    return false;
  }
  const bool live = m_options.now() < it->second;
  m_sessions.erase(it);
  return live;
}

bool session_store::valid(std::string_view p_token)
{
  std::lock_guard lock(m_mutex);
  const auto it = m_sessions.find(p_token);
  if (it == m_sessions.end()) {
    return false;
  }
  if (m_options.now() >= it->second) {
    m_sessions.erase(it);
    return false;
  }
  return true;
}

std::string to_json(const status_snapshot& p_snapshot)
{
  auto rooms = json::array();
  for (const auto& room : p_snapshot.rooms) {
    auto devices = json::array();
    for (const auto& device : room.devices) {
      devices.push_back(device_node(device));
    }
    json frame{ { "t", room.frame.t },
                { "temp_c", room.frame.temp_c },
                { "humidity_pct", room.frame.humidity_pct },
                { "lux", room.frame.lux },
                { "motion", room.frame.motion } };
    frame["smoke"] = room.frame.smoke ? json(*room.frame.smoke) : json(nullptr);
    rooms.push_back({ { "room", room.frame.room },
                      { "sensors", std::move(frame) },
                      { "occupancy_effective", room.occupied_effective },
                      { "devices", std::move(devices) } });
  }
  json root{ { "tick", p_snapshot.tick },
             { "t", p_snapshot.t },
             { "timestamp", p_snapshot.timestamp },
             { "alarm_active", p_snapshot.alarm_active },
             { "cum_kwh", p_snapshot.cum_kwh },
             { "cum_cost_gbp", energy::round_currency(p_snapshot.cum_cost_gbp) },
             { "rooms", std::move(rooms) } };
  return root.dump();
}

std::string to_json(const engine::device_state& p_device)
{
  return device_node(p_device).dump();
}

std::string to_json(std::span<const energy::energy_record> p_records)
{
  auto list = json::array();
  for (const auto& record : p_records) {
    list.push_back(record_node(record));
  }
  return list.dump();
}

struct server::impl
{
  impl(controller& p_controller, credentials p_credentials, server_options p_options)
    : control(p_controller)
    , login_record(p_credentials)
    , options(std::move(p_options))
    , sessions(std::move(p_credentials), options.sessions)
  {
    routes();
  }

  bool authorised(const httplib::Request& p_request, httplib::Response& p_response)
  {
    if (sessions.valid(bearer_token(p_request))) {
      return true;
    }
    send_error(p_response, 401, "authentication required");
    return false;
  }

  void persist(const tunables& p_settings)
  {
    if (options.config_path.empty()) {
      return;
    }
    std::lock_guard lock(persist_mutex);
    save_service_config(options.config_path, { p_settings, login_record });
  }

  void routes()
  {
    http.Post("/api/login", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = object_body(req, res, { "user", "pass" });
      if (!body) {
        return;
      }
      if (!body->contains("user") || !(*body)["user"].is_string() ||
          !body->contains("pass") || !(*body)["pass"].is_string()) {
        send_error(res, 422, "user and pass strings required");
        return;
      }
      const auto result = sessions.login((*body)["user"].get<std::string>(),
                                         (*body)["pass"].get<std::string>());
      switch (result.outcome) {
        case login_outcome::ok:
          send_json(res, 200,
                    { { "token", result.token },
                      { "expires_in_s", options.sessions.lifetime.count() } });
          return;
        case login_outcome::throttled:
          send_error(res, 429, "too many failed logins; retry later");
          return;
        case login_outcome::rejected:
          send_error(res, 401, "invalid credentials");
          return;
      }
    });

    http.Post("/api/logout", [this](const httplib::Request& req, httplib::Response& res) {
      if (!sessions.logout(bearer_token(req))) {
        send_error(res, 401, "authentication required");
        return;
      }
      send_json(res, 200, { { "logged_out", true } });
    });

    http.Get("/api/status", [this](const httplib::Request& req, httplib::Response& res) {
      if (!authorised(req, res)) {
        return;
      }
      res.status = 200;
      res.set_content(to_json(*control.snapshot()), "application/json");
    });

    http.Post(R"(/api/devices/([^/]+)/mode)",
              [this](const httplib::Request& req, httplib::Response& res) {
                if (!authorised(req, res)) {
                  return;
                }
                const auto id = req.matches[1].str();
                if (control.manifest().find_device(id) == nullptr) {
                  send_error(res, 404, "unknown device " + id);
                  return;
                }
                auto body = object_body(req, res, { "mode" });
                if (!body) {
                  return;
                }
                if (!body->contains("mode") || !(*body)["mode"].is_string()) {
                  send_error(res, 422, "mode string required", "mode");
                  return;
                }
                const auto mode = engine::parse_device_mode((*body)["mode"].get<std::string>());
                if (!mode) {
                  send_error(res, 422, "mode must be AUTO, MANUAL, ON or OFF", "mode");
                  return;
                }
                try {
                  send_json(res, 200, device_node(control.request_mode(id, *mode)));
                } catch (const conflict_error& e) {
                  send_error(res, 409, e.what());
                }
              });

    http.Post(R"(/api/devices/([^/]+)/duty)",
              [this](const httplib::Request& req, httplib::Response& res) {
                if (!authorised(req, res)) {
                  return;
                }
                const auto id = req.matches[1].str();
                if (control.manifest().find_device(id) == nullptr) {
                  send_error(res, 404, "unknown device " + id);
                  return;
                }
                auto body = object_body(req, res, { "duty_pct" });
                if (!body) {
                  return;
                }
                if (!body->contains("duty_pct") || !(*body)["duty_pct"].is_number_integer()) {
                  send_error(res, 422, "integer duty_pct required", "duty_pct");
                  return;
                }
                const auto duty = (*body)["duty_pct"].get<std::int64_t>();
                if (duty < 0 || duty > 100) {
                  send_error(res, 422, "duty_pct must be within [0, 100]", "duty_pct");
                  return;
                }
                try {
                  send_json(res, 200,
                            device_node(control.request_duty(id, static_cast<int>(duty))));
                } catch (const conflict_error& e) {
                  send_error(res, 409, e.what());
                } catch (const range_error& e) {
                  send_error(res, 422, e.what(), "duty_pct");
                }
              });

    http.Get("/api/thresholds", [this](const httplib::Request& req, httplib::Response& res) {
      if (!authorised(req, res)) {
        return;
      }
      res.status = 200;
      res.set_content(smarthome::to_json(control.pending_tunables()), "application/json");
    });

    http.Put("/api/thresholds", [this](const httplib::Request& req, httplib::Response& res) {
      if (!authorised(req, res)) {
        return;
      }
      std::lock_guard lock(tunables_mutex);
      tunables merged;
      try {
        merged = merge_tunables(control.pending_tunables(), req.body);
      } catch (const validation_error& e) {
        send_error(res, 422, e.what(), e.field());
        return;
      } catch (const parse_error& e) {
        send_error(res, 422, e.what());
        return;
      }
      try {
        persist(merged);
      } catch (const error& e) {
        send_error(res, 500, e.what());
        return;
      }
      control.request_tunables(merged);
      res.status = 200;
      res.set_content(smarthome::to_json(merged), "application/json");
    });

    http.Get("/api/energy", [this](const httplib::Request& req, httplib::Response& res) {
      if (!authorised(req, res)) {
        return;
      }
      std::optional<std::int64_t> since;
      if (req.has_param("since")) {
        since = parse_iso8601(req.get_param_value("since"));
        if (!since) {
          send_error(res, 422, "since must be an ISO-8601 timestamp", "since");
          return;
        }
      }
      const auto records = control.records_since(since);
      res.status = 200;
      res.set_content(to_json(std::span<const energy::energy_record>(records)),
                      "application/json");
    });

    http.Get("/api/export.csv", [this](const httplib::Request& req, httplib::Response& res) {
      if (!authorised(req, res)) {
        return;
      }
      res.status = 200;
      res.set_header("Content-Disposition", "attachment; filename=\"energy_log.csv\"");
      res.set_content(control.export_csv(), "text/csv");
    });

    if (!options.web_root.empty()) {
      http.set_mount_point("/", options.web_root.string());
    }
    http.set_socket_options([](socket_t p_sock) {
      int yes = 1;
      setsockopt(p_sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
  }

  controller& control;
  credentials login_record;
  server_options options;
  session_store sessions;
  std::mutex persist_mutex;
  std::mutex tunables_mutex;
  httplib::Server http;
  std::thread worker;
  int bound_port = -1;
};

server::server(controller& p_controller, credentials p_credentials, server_options p_options)
  : m_impl(std::make_unique<impl>(p_controller, std::move(p_credentials), std::move(p_options)))
{
}

server::~server()
{
  stop();
}

int server::start(const std::string& p_host, int p_port)
{
  auto& http = m_impl->http;
  int port = p_port;
  if (p_port == 0) {
    port = http.bind_to_any_port(p_host);
  } else if (!http.bind_to_port(p_host, p_port)) {
    port = -1;
  }
  if (port < 0) {
    throw io_error("cannot bind " + p_host + ":" + std::to_string(p_port));
  }
  m_impl->bound_port = port;
  m_impl->worker = std::thread([&http] { http.listen_after_bind(); });
  http.wait_until_ready();
  return port;
}

void server::stop()
{
  if (!m_impl) {
    return;
  }
  m_impl->http.stop();
  if (m_impl->worker.joinable()) {
    m_impl->worker.join();
  }
}

int server::port() const noexcept
{
  return m_impl->bound_port;
}

}  // namespace smarthome::api
