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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "campus/error.hpp"

namespace campus::tablespec {

// ---------------------------------------------------------------------------
// Schema IR
// ---------------------------------------------------------------------------

enum class Datatype { Number, Varchar2 };

/// VARCHAR2 length.
struct Length {
  int value = 0;
  friend bool operator==(const Length&, const Length&) = default;
};

/// NUMBER precision with optional scale.
struct Precision {
  int precision = 0;
  std::optional<int> scale;
  friend bool operator==(const Precision&, const Precision&) = default;
};

using SizeSpec = std::variant<Length, Precision>;

enum class CompareOp { LT, LE, GT, GE, EQ, NE };

struct NoConstraint {
  friend bool operator==(const NoConstraint&, const NoConstraint&) = default;
};
struct PrimaryKey {
  friend bool operator==(const PrimaryKey&, const PrimaryKey&) = default;
};
struct Unique {
  friend bool operator==(const Unique&, const Unique&) = default;
};
/// `check (<column> <op> <literal>)` on the annotated column.
struct CheckComparison {
  CompareOp op = CompareOp::LT;
  double literal = 0.0;
  friend bool operator==(const CheckComparison&, const CheckComparison&) = default;
};
/// `check (<column> = 'v1' or <column> = 'v2' ...)`.
struct CheckEnum {
  std::vector<std::string> values;
  friend bool operator==(const CheckEnum&, const CheckEnum&) = default;
};

using ConstraintSpec =
    std::variant<NoConstraint, PrimaryKey, Unique, CheckComparison, CheckEnum>;

struct ColumnSpec {
  std::string name;
  Datatype datatype = Datatype::Number;
  // Absent only for a bare NUMBER; VARCHAR2 always carries a length.
  std::optional<SizeSpec> size;
  ConstraintSpec constraint;
  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

struct TableSpec {
  std::string table_name;
  std::vector<ColumnSpec> columns;
  friend bool operator==(const TableSpec&, const TableSpec&) = default;
};

/// Normalized OCR text, one entry per non-blank line.
struct RawSpecDocument {
  std::string source_name;
  std::vector<std::string> lines;
};

// ---------------------------------------------------------------------------
// Errors and violations
// ---------------------------------------------------------------------------

enum class ParseErrc {
  UnknownDatatype,
  MalformedSize,
  MalformedConstraint,
  MissingHeader,
  MissingTableName,
  EmptyTable,
};

std::string_view to_string(ParseErrc code);

/// Raised by parse_table_spec. `line()` is 1-based within the document, or 0
/// when the error concerns the document as a whole.
class ParseError : public CodedError<ParseErrc> {
 public:
  ParseError(ParseErrc code, std::size_t line, std::string detail);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class ViolationKind {
  NoColumns,
  DuplicateColumnName,
  MultiplePrimaryKeys,
  InvalidIdentifier,
  ScaleExceedsPrecision,
  PrecisionOutOfRange,
  LengthOutOfRange,
  SizeKindMismatch,
  MissingLength,
  EmptyCheckEnum,
  IllegalEnumValue,
  NonFiniteLiteral,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;  // column or table name the breach concerns
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Text-level rectification of OCR output.
///
/// Tabs and carriage returns become spaces, space runs collapse, lines are
/// trimmed, blank lines dropped, typographic quotes become ASCII quotes. In
/// tokens that start with a digit or contain a comma and are otherwise made
/// of digits, commas and the look-alikes `O o l I`, the look-alikes are
/// repaired to `0`/`1`. Identifiers never start with a digit or contain a
/// comma, so names are left alone. Idempotent.
std::string normalize_ocr_text(std::string_view raw);

/// Normalizes `raw` and splits it into a document.
RawSpecDocument make_document(std::string_view raw, std::string source_name = {});

/// Parses a normalized document. Column order follows row order.
/// Throws ParseError.
TableSpec parse_table_spec(const RawSpecDocument& doc);

/// Convenience: make_document + parse_table_spec.
TableSpec parse_table_spec(std::string_view raw_text);

/// Every invariant breach in `spec`; empty iff valid.
std::vector<Violation> validate(const TableSpec& spec);

bool is_identifier(std::string_view s);

std::string_view to_string(Datatype t);
std::string_view to_string(CompareOp op);
/// SQL spelling of the operator (`<`, `<=`, ..., `<>`).
std::string_view sql_operator(CompareOp op);
/// Shortest decimal text that round-trips the literal.
std::string format_literal(double v);

// Canonical JSON form of the IR: field names as in the structs above, enum
// values as uppercase strings.
nlohmann::json to_json(const TableSpec& spec);
TableSpec table_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Violation& v);

}  // namespace campus::tablespec
