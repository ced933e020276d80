//
// Copyright 2026 The Campus AR Authors
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
//

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace campus {

/// Base of every domain error raised by the library.
///
/// `kind()` is a stable CamelCase tag ("UnknownDatatype", "Unreachable", ...)
/// used by the CLI on stderr and by the HTTP API in `{"error": ...}` bodies.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail),
        kind_(std::move(kind)),
        detail_(std::move(detail)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string kind_;
  std::string detail_;
};

/// Typed error: carries a module-specific code enum alongside the tag.
/// `Code` must have a free `to_string(Code)` found by ADL.
template <typename Code>
class CodedError : public Error {
 public:
  CodedError(Code code, std::string detail)
      : Error(std::string(to_string(code)), std::move(detail)), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

}  // namespace campus
