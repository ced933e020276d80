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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "campus/error.hpp"
#include "campus/tablespec.hpp"

namespace campus::sqlgen {

enum class KeywordCase { Lower, Upper };

struct DdlOptions {
  KeywordCase keyword_case = KeywordCase::Lower;
  int indent = 0;  // spaces before each column line, 0..16
  /// Replaces the derived "<initials>CH" prefix of check-constraint names.
  std::optional<std::string> constraint_prefix_override;
};

/// Thrown when the input spec fails tablespec::validate (or options are out
/// of range). Carries the violations that were found.
class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(std::vector<tablespec::Violation> violations);
  const std::vector<tablespec::Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<tablespec::Violation> violations_;
};

/// `create table` statement for `spec`, one column per line, ending in `);`
/// without a trailing newline. Throws InvalidSpec.
///
/// Check predicates are parenthesized, name the column explicitly on both
/// sides of every `or`, and each check gets a `constraint <NAME>` clause.
std::string generate_ddl(const tablespec::TableSpec& spec, const DdlOptions& opts = {});

/// Uppercase initials of the `_`-separated words of `table_name`, then "CH",
/// then the 1-based ordinal: ("Student_Mark", 2) -> "SMCH2".
std::string constraint_name(std::string_view table_name, int ordinal);

/// Fixed-format table document (title, header, one row per column) that
/// parses back to `spec`. Lines end with LF. Throws InvalidSpec.
std::string render_spec_text(const tablespec::TableSpec& spec);

}  // namespace campus::sqlgen
