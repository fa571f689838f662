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

#include <smarthome/config.hpp>

#include <array>
#include <cmath>

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <smarthome/error.hpp>

#include "json_util.hpp"

namespace smarthome {
namespace {

std::string to_hex(const unsigned char* p_data, std::size_t p_size)
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(p_size * 2);
  for (std::size_t i = 0; i < p_size; ++i) {
    hex.push_back(digits[p_data[i] >> 4U]);
    hex.push_back(digits[p_data[i] & 0x0FU]);
  }
  return hex;
}

std::array<unsigned char, 32> sha256(std::string_view p_a, std::string_view p_b)
{
  std::array<unsigned char, 32> digest{};
  unsigned int length = 0;
  EVP_MD_CTX* context = EVP_MD_CTX_new();
  if (context == nullptr ||
      EVP_DigestInit_ex(context, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(context, p_a.data(), p_a.size()) != 1 ||
      EVP_DigestUpdate(context, p_b.data(), p_b.size()) != 1 ||
      EVP_DigestFinal_ex(context, digest.data(), &length) != 1) {
    EVP_MD_CTX_free(context);
    throw error("sha256 failed");
  }
  EVP_MD_CTX_free(context);
  return digest;
}

struct tunable_field
{
  const char* name;
  double engine::thresholds::*member;
};

constexpr tunable_field threshold_fields[] = {
  { "lux_off", &engine::thresholds::lux_off },
  { "lux_full", &engine::thresholds::lux_full },
  { "fan_t1_c", &engine::thresholds::fan_t1_c },
  { "fan_t2_c", &engine::thresholds::fan_t2_c },
  { "fan_t3_c", &engine::thresholds::fan_t3_c },
  { "fan_h3_pct", &engine::thresholds::fan_h3_pct },
  { "occupancy_hold_s", &engine::thresholds::occupancy_hold_s },
};

constexpr const char* tariff_field = "tariff_gbp_per_kwh";

nlohmann::json tunables_node(const tunables& p_tunables)
{
  nlohmann::json node = nlohmann::json::object();
  for (const auto& field : threshold_fields) {
    node[field.name] = p_tunables.thresholds.*field.member;
  }
  node[tariff_field] = p_tunables.tariff_gbp_per_kwh;
  return node;
}

tunables merge_node(const tunables& p_current, const nlohmann::json& p_node)
{
  if (!p_node.is_object()) {
    throw validation_error("body", "expected a JSON object");
  }
  auto merged = p_current;
  for (const auto& [key, value] : p_node.items()) {
    double* target = nullptr;
    for (const auto& field : threshold_fields) {
      if (key == field.name) {
        target = &(merged.thresholds.*field.member);
      }
    }
    if (key == tariff_field) {
      target = &merged.tariff_gbp_per_kwh;
    }
    if (target == nullptr) {
      throw validation_error(key, "unknown field");
    }
    if (!value.is_number()) {
      throw validation_error(key, "expected a number");
    }
    *target = value.get<double>();
  }
  validate(merged);
  return merged;
}

}  // namespace

credentials credentials::create(std::string_view p_user, std::string_view p_password)
{
  credentials result;
  result.user = std::string(p_user);
  result.salt_hex = random_hex(16);
  const auto digest = sha256(result.salt_hex, p_password);
  result.sha256_hex = to_hex(digest.data(), digest.size());
  return result;
}

bool credentials::matches(std::string_view p_user, std::string_view p_password) const
{
  const auto user_expected = sha256(salt_hex, user);
  const auto user_given = sha256(salt_hex, p_user);
  const auto password_given = sha256(salt_hex, p_password);
  const auto password_hex = to_hex(password_given.data(), password_given.size());

  const bool user_ok =
    CRYPTO_memcmp(user_expected.data(), user_given.data(), user_expected.size()) == 0;
  const bool password_ok = password_hex.size() == sha256_hex.size() &&
                           CRYPTO_memcmp(password_hex.data(), sha256_hex.data(),
                                         password_hex.size()) == 0;
  return user_ok & password_ok;
}

void validate(const tunables& p_tunables)
{
  engine::validate(p_tunables.thresholds);
  if (!std::isfinite(p_tunables.tariff_gbp_per_kwh) ||
      p_tunables.tariff_gbp_per_kwh < 0.0) {
    throw validation_error(tariff_field, "must be >= 0");
  }
}

tunables merge_tunables(const tunables& p_current, std::string_view p_json_object)
{
  return merge_node(p_current, detail::parse_json_document(p_json_object, "body"));
}

std::string to_json(const tunables& p_tunables)
{
  return tunables_node(p_tunables).dump();
}

service_config load_service_config(const std::filesystem::path& p_path)
{
  service_config config;
  std::error_code ec;
  if (!std::filesystem::exists(p_path, ec)) {
    return config;
  }
  const auto root = detail::parse_json_document(detail::read_file(p_path), "config");
  if (!root.is_object()) {
    throw parse_error("config: top level must be an object");
  }
  detail::reject_unknown_keys(root, { "thresholds", "credentials" }, "");
  if (root.contains("thresholds")) {
    config.settings = merge_node(config.settings, root["thresholds"]);
  }
  if (root.contains("credentials")) {
    const auto& node = root["credentials"];
    if (!node.is_object()) {
      throw validation_error("credentials", "expected an object");
    }
    detail::reject_unknown_keys(node, { "user", "salt", "sha256" }, "credentials.");
    config.login = credentials{
      .user = detail::require<std::string>(node, "user", "credentials."),
      .salt_hex = detail::require<std::string>(node, "salt", "credentials."),
      .sha256_hex = detail::require<std::string>(node, "sha256", "credentials."),
    };
  }
  return config;
}

void save_service_config(const std::filesystem::path& p_path,
                         const service_config& p_config)
{
  nlohmann::json root;
  root["thresholds"] = tunables_node(p_config.settings);
  if (p_config.login) {
    root["credentials"] = { { "user", p_config.login->user },
                            { "salt", p_config.login->salt_hex },
                            { "sha256", p_config.login->sha256_hex } };
  }
  detail::write_file_atomically(p_path, root.dump(2) + "\n");
}

std::string random_hex(std::size_t p_bytes)
{
  std::string raw(p_bytes, '\0');
  if (RAND_bytes(reinterpret_cast<unsigned char*>(raw.data()),
                 static_cast<int>(raw.size())) != 1) {
    throw error("RAND_bytes failed");
  }
  return to_hex(reinterpret_cast<const unsigned char*>(raw.data()), raw.size());
}

}  // namespace smarthome
