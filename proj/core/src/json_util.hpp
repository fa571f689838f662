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

// Internal helpers shared by the JSON-backed file formats.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include <smarthome/error.hpp>

namespace smarthome::detail {

inline std::string read_file(const std::filesystem::path& p_path)
{
  std::ifstream in(p_path, std::ios::binary);
  if (!in) {
    throw io_error("cannot open " + p_path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Parses JSON with `//` and `/* */` comments allowed.
inline nlohmann::json parse_json_document(std::string_view p_text,
                                          std::string_view p_what)
{
  try {
    return nlohmann::json::parse(p_text.begin(), p_text.end(), nullptr, true,
                                 true);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string(p_what) + ": " + e.what());
  }
}

inline void reject_unknown_keys(const nlohmann::json& p_object,
                                std::initializer_list<std::string_view> p_known,
                                const std::string& p_prefix)
{
  for (const auto& [key, value] : p_object.items()) {
    bool known = false;
    for (auto candidate : p_known) {
      known = known || candidate == key;
    }
    if (!known) {
      throw validation_error(p_prefix + key, "unknown field");
    }
  }
}

inline const nlohmann::json& require_node(const nlohmann::json& p_object,
                                          const std::string& p_key,
                                          const std::string& p_prefix = "")
{
  const auto it = p_object.find(p_key);
  if (it == p_object.end()) {
    throw validation_error(p_prefix + p_key, "missing required field");
  }
  return *it;
}

template<typename T>
T require(const nlohmann::json& p_object,
          const std::string& p_key,
          const std::string& p_prefix = "")
{
  const auto& node = require_node(p_object, p_key, p_prefix);
  if constexpr (std::is_same_v<T, std::string>) {
    if (!node.is_string()) {
      throw validation_error(p_prefix + p_key, "expected a string");
    }
  } else if constexpr (std::is_same_v<T, bool>) {
    if (!node.is_boolean()) {
      throw validation_error(p_prefix + p_key, "expected a boolean");
    }
  } else if constexpr (std::is_integral_v<T>) {
    if (!node.is_number_integer()) {
      throw validation_error(p_prefix + p_key, "expected an integer");
    }
    if constexpr (std::is_unsigned_v<T>) {
      if (node.is_number_integer() && !node.is_number_unsigned() &&
          node.get<std::int64_t>() < 0) {
        throw validation_error(p_prefix + p_key, "expected a non-negative integer");
      }
    }
  } else {
    if (!node.is_number()) {
      throw validation_error(p_prefix + p_key, "expected a number");
    }
  }
  return node.get<T>();
}

/// Writes to a sibling temp file then renames it over `p_path`.
inline void write_file_atomically(const std::filesystem::path& p_path,
                                  std::string_view p_content)
{
  auto temp = p_path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw io_error("cannot write " + temp.string());
    }
    out.write(p_content.data(), static_cast<std::streamsize>(p_content.size()));
    out.flush();
    if (!out) {
      throw io_error("short write to " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, p_path, ec);
  if (ec) {
    throw io_error("rename " + temp.string() + ": " + ec.message());
  }
}

}  // namespace smarthome::detail
