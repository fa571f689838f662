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

#include <stdexcept>
#include <string>

namespace smarthome {

/// Base of every error thrown by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Input could not be parsed at all (malformed JSON, truncated CSV, ...).
class parse_error : public error
{
public:
  using error::error;
};

/// Input parsed but violates an invariant. `field()` names the offender.
class validation_error : public error
{
public:
  validation_error(std::string p_field, const std::string& p_what)
    : error(p_field + ": " + p_what)
    , m_field(std::move(p_field))
  {
  }

  [[nodiscard]] const std::string& field() const noexcept
  {
    return m_field;
  }

private:
  std::string m_field;
};

/// Lookup of a room or device that is not in the manifest.
class not_found_error : public error
{
public:
  using error::error;
};

/// Argument outside its permitted domain (duty > 100, t past the end, ...).
class range_error : public error
{
public:
  using error::error;
};

class io_error : public error
{
public:
  using error::error;
};

}  // namespace smarthome
