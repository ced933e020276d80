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

#include "campus/tablespec.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace campus::tablespec {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool iequals(std::string_view a, std::string_view b) { return lower(a) == lower(b); }

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::size_t from, std::size_t to,
                 std::string_view sep) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += sep;
    out += parts[i];
  }
  return out;
}

std::string replace_smart_quotes(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i + 2 < raw.size() && static_cast<unsigned char>(raw[i]) == 0xE2 &&
        static_cast<unsigned char>(raw[i + 1]) == 0x80) {
      const auto third = static_cast<unsigned char>(raw[i + 2]);
      if (third == 0x9C || third == 0x9D) {
        out += '"';
        i += 2;
        continue;
      }
      if (third == 0x98 || third == 0x99) {
        out += '\'';
        i += 2;
        continue;
      }
    }
    out += raw[i];
  }
  return out;
}

bool is_confusable(char c) { return c == 'O' || c == 'o' || c == 'l' || c == 'I'; }

// Numeric-context token: starts with a digit or holds a comma, has at least
// one digit, and is otherwise digits, commas and look-alikes.
bool numeric_context(std::string_view tok) {
  bool digit = false;
  bool comma = false;
  for (char c : tok) {
    if (is_digit(c)) {
      digit = true;
    } else if (c == ',') {
      comma = true;
    } else if (!is_confusable(c)) {
      return false;
    }
  }
  return digit && (is_digit(tok.front()) || comma);
}

std::string repair_token(std::string tok) {
  if (!numeric_context(tok)) return tok;
  for (char& c : tok) {
    if (c == 'O' || c == 'o') c = '0';
    if (c == 'l' || c == 'I') c = '1';
  }
  return tok;
}

std::string normalize_line(std::string_view line) {
  std::string flat(line);
  for (char& c : flat) {
    if (is_space(c)) c = ' ';
  }
  const auto words = split_words(flat);
  std::string out;
  bool quoted = false;  // text after the first quote is enum literal territory
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    if (!quoted && w.find_first_of("\"'") != std::string::npos) quoted = true;
    out += quoted ? w : repair_token(w);
  }
  return out;
}

bool is_header(std::string_view line) {
  if (line.find(' ') == std::string_view::npos) return false;
  std::string squeezed;
  for (char c : line) {
    if (c == ' ' || c == '/' || c == '|') continue;
    squeezed += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return squeezed == "columnnamedatatypesizeconstraint";
}

std::optional<Datatype> datatype_keyword(std::string_view tok) {
  const auto l = lower(tok);
  if (l == "number") return Datatype::Number;
  if (l == "varchar2") return Datatype::Varchar2;
  return std::nullopt;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

std::optional<int> to_int(std::string_view s) {
  if (!all_digits(s)) return std::nullopt;
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// -?digits[.digits][(e|E)[+-]digits]
bool is_numeric_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const auto digits = [&] {
    const std::size_t start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    return i > start;
  };
  if (!digits()) return false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    if (!digits()) return false;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (!digits()) return false;
  }
  return i == s.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::optional<CompareOp> take_operator(std::string_view& s) {
  static constexpr std::array<std::pair<std::string_view, CompareOp>, 7> kOps{{
      {"<=", CompareOp::LE},
      {">=", CompareOp::GE},
      {"<>", CompareOp::NE},
      {"!=", CompareOp::NE},
      {"<", CompareOp::LT},
      {">", CompareOp::GT},
      {"=", CompareOp::EQ},
  }};
  for (const auto& [text, op] : kOps) {
    if (s.substr(0, text.size()) == text) {
      s.remove_prefix(text.size());
      return op;
    }
  }
  return std::nullopt;
}

std::optional<CheckEnum> parse_enum(std::string_view s) {
  CheckEnum out;
  for (;;) {
    if (s.empty() || (s.front() != '"' && s.front() != '\'')) return std::nullopt;
    const char quote = s.front();
    const auto close = s.find(quote, 1);
    if (close == std::string_view::npos) return std::nullopt;
    auto value = s.substr(1, close - 1);
    if (value.empty()) return std::nullopt;
    out.values.emplace_back(value);
    s = trim(s.substr(close + 1));
    if (s.empty()) return out;
    if (s.size() < 3 || !iequals(s.substr(0, 2), "or") || s[2] != ' ') return std::nullopt;
    s = trim(s.substr(3));
  }
}

std::optional<ConstraintSpec> parse_constraint(std::string_view text, std::string_view column) {
  text = trim(text);
  if (text.empty()) return NoConstraint{};
  const auto l = lower(text);
  if (l == "primary key") return PrimaryKey{};
  if (l == "unique") return Unique{};
  if (l.rfind("check", 0) != 0) return std::nullopt;

  // "checkfoo" is a word, not the keyword.
  if (text.size() > 5 && (std::isalnum(static_cast<unsigned char>(text[5])) || text[5] == '_')) {
    return std::nullopt;
  }
  auto rest = trim(text.substr(5));
  if (!rest.empty() && (rest.front() == '"' || rest.front() == '\'')) {
    if (auto e = parse_enum(rest)) return *e;
    return std::nullopt;
  }
  // Optional repetition of the annotated column: "check Total < 100".
  if (rest.size() > column.size() && iequals(rest.substr(0, column.size()), column) &&
      !std::isalnum(static_cast<unsigned char>(rest[column.size()])) && rest[column.size()] != '_') {
    rest = trim(rest.substr(column.size()));
  }
  auto op = take_operator(rest);
  if (!op) return std::nullopt;
  rest = trim(rest);
  if (!is_numeric_literal(rest)) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || !std::isfinite(v)) return std::nullopt;
  return CheckComparison{*op, v};
}

// Parses a row assuming the datatype keyword sits at `k`.
ColumnSpec parse_row_at(const std::vector<std::string>& tok, std::size_t k, std::size_t line_no,
                        std::string_view line) {
  ColumnSpec col;
  col.name = join(tok, 0, k, "_");
  col.datatype = *datatype_keyword(tok[k]);

  std::size_t i = k + 1;
  if (i < tok.size() && (is_digit(tok[i].front()) || tok[i].front() == '(')) {
    std::string size = tok[i++];
    // OCR often splits "5, 3" into two tokens.
    if (!size.empty() && size.back() == ',' && i < tok.size() && all_digits(tok[i])) size += tok[i++];
    std::string_view sv = size;
    if (sv.size() >= 2 && sv.front() == '(' && sv.back() == ')') sv = sv.substr(1, sv.size() - 2);
    const auto comma = sv.find(',');
    const auto first = to_int(sv.substr(0, comma));
    const auto second = comma == std::string_view::npos ? std::optional<int>{} : to_int(sv.substr(comma + 1));
    if (!first || (comma != std::string_view::npos && !second)) {
      throw ParseError(ParseErrc::MalformedSize, line_no, "size '" + size + "' in: " + std::string(line));
    }
    if (col.datatype == Datatype::Varchar2) {
      if (second) {
        throw ParseError(ParseErrc::MalformedSize, line_no,
                         "Varchar2 takes a single length, got '" + size + "' in: " + std::string(line));
      }
      col.size = Length{*first};
    } else {
      col.size = Precision{*first, second};
    }
  } else if (col.datatype == Datatype::Varchar2) {
    throw ParseError(ParseErrc::MalformedSize, line_no, "Varchar2 requires a length in: " + std::string(line));
  }

  const auto text = join(tok, i, tok.size(), " ");
  auto constraint = parse_constraint(text, col.name);
  if (!constraint) {
    throw ParseError(ParseErrc::MalformedConstraint, line_no,
                     "constraint '" + text + "' in: " + std::string(line));
  }
  col.constraint = std::move(*constraint);
  return col;
}

ColumnSpec parse_row(std::string_view line, std::size_t line_no) {
  const auto tok = split_words(line);
  std::vector<std::size_t> candidates;
  for (std::size_t k = 1; k < tok.size(); ++k) {
    if (datatype_keyword(tok[k])) candidates.push_back(k);
  }
  if (candidates.empty()) {
    const std::string guess = tok.size() > 1 ? tok[1] : std::string("<none>");
    throw ParseError(ParseErrc::UnknownDatatype, line_no,
                     "datatype '" + guess + "' is not Number or Varchar2 in: " + std::string(line));
  }
  // A keyword may also appear inside a multi-word name ("Phone Number
  // Varchar2 10"); the first anchor that yields a well-formed row wins.
  std::optional<ParseError> first_error;
  for (auto k : candidates) {
    try {
      return parse_row_at(tok, k, line_no, line);
    } catch (const ParseError& e) {
      if (!first_error) first_error = e;
    }
  }
  throw *first_error;
}

bool printable_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= 0x20 && c <= 0x7E; });
}

bool whitespace_canonical(std::string_view s) {
  if (s.empty() || s.front() == ' ' || s.back() == ' ') return false;
  return s.find("  ") == std::string_view::npos;
}

}  // namespace

std::string_view to_string(ParseErrc code) {
  switch (code) {
    case ParseErrc::UnknownDatatype: return "UnknownDatatype";
    case ParseErrc::MalformedSize: return "MalformedSize";
    case ParseErrc::MalformedConstraint: return "MalformedConstraint";
    case ParseErrc::MissingHeader: return "MissingHeader";
    case ParseErrc::MissingTableName: return "MissingTableName";
    case ParseErrc::EmptyTable: return "EmptyTable";
  }
  return "ParseError";
}

ParseError::ParseError(ParseErrc code, std::size_t line, std::string detail)
    : CodedError(code, line ? "line " + std::to_string(line) + ": " + detail : std::move(detail)),
      line_(line) {}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NoColumns: return "NoColumns";
    case ViolationKind::DuplicateColumnName: return "DuplicateColumnName";
    case ViolationKind::MultiplePrimaryKeys: return "MultiplePrimaryKeys";
    case ViolationKind::InvalidIdentifier: return "InvalidIdentifier";
    case ViolationKind::ScaleExceedsPrecision: return "ScaleExceedsPrecision";
    case ViolationKind::PrecisionOutOfRange: return "PrecisionOutOfRange";
    case ViolationKind::LengthOutOfRange: return "LengthOutOfRange";
    case ViolationKind::SizeKindMismatch: return "SizeKindMismatch";
    case ViolationKind::MissingLength: return "MissingLength";
    case ViolationKind::EmptyCheckEnum: return "EmptyCheckEnum";
    case ViolationKind::IllegalEnumValue: return "IllegalEnumValue";
    case ViolationKind::NonFiniteLiteral: return "NonFiniteLiteral";
  }
  return "Violation";
}

std::string_view to_string(Datatype t) { return t == Datatype::Number ? "NUMBER" : "VARCHAR2"; }

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::LT: return "LT";
    case CompareOp::LE: return "LE";
    case CompareOp::GT: return "GT";
    case CompareOp::GE: return "GE";
    case CompareOp::EQ: return "EQ";
    case CompareOp::NE: return "NE";
  }
  return "?";
}

std::string_view sql_operator(CompareOp op) {
  switch (op) {
    case CompareOp::LT: return "<";
    case CompareOp::LE: return "<=";
    case CompareOp::GT: return ">";
    case CompareOp::GE: return ">=";
    case CompareOp::EQ: return "=";
    case CompareOp::NE: return "<>";
  }
  return "?";
}

std::string format_literal(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string normalize_ocr_text(std::string_view raw) {
  const auto text = replace_smart_quotes(raw);
  std::string out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    auto line = normalize_line(std::string_view(text).substr(start, end - start));
    if (!line.empty()) {
      if (!out.empty()) out += '\n';
      out += line;
    }
    start = end + 1;
  }
  return out;
}

RawSpecDocument make_document(std::string_view raw, std::string source_name) {
  RawSpecDocument doc{std::move(source_name), {}};
  std::istringstream in(normalize_ocr_text(raw));
  for (std::string line; std::getline(in, line);) doc.lines.push_back(line);
  return doc;
}

TableSpec parse_table_spec(const RawSpecDocument& doc) {
  const auto header = std::find_if(doc.lines.begin(), doc.lines.end(),
                                   [](const std::string& l) { return is_header(l); });
  if (header == doc.lines.end()) {
    throw ParseError(ParseErrc::MissingHeader, 0,
                     "no 'Column Name / Data type / Size / Constraint' header line");
  }
  if (header == doc.lines.begin()) {
    throw ParseError(ParseErrc::MissingTableName, 1, "header line is not preceded by a table title");
  }

  TableSpec spec;
  const auto title = split_words(doc.lines.front());
  spec.table_name = join(title, 0, title.size(), "_");

  for (auto it = std::next(header); it != doc.lines.end(); ++it) {
    const auto line_no = static_cast<std::size_t>(it - doc.lines.begin()) + 1;
    spec.columns.push_back(parse_row(*it, line_no));
  }
  if (spec.columns.empty()) throw ParseError(ParseErrc::EmptyTable, 0, "no column rows after the header");
  return spec;
}

TableSpec parse_table_spec(std::string_view raw_text) { return parse_table_spec(make_document(raw_text)); }

std::vector<Violation> validate(const TableSpec& spec) {
  std::vector<Violation> out;
  const auto add = [&](ViolationKind k, const std::string& subject, std::string msg) {
    out.push_back({k, subject, std::move(msg)});
  };

  if (!is_identifier(spec.table_name)) {
    add(ViolationKind::InvalidIdentifier, spec.table_name, "table name is not an identifier");
  }
  if (spec.columns.empty()) add(ViolationKind::NoColumns, spec.table_name, "table has no columns");

  std::set<std::string> seen;
  int primary_keys = 0;
  for (const auto& col : spec.columns) {
    if (!is_identifier(col.name)) add(ViolationKind::InvalidIdentifier, col.name, "column name is not an identifier");
    if (!seen.insert(lower(col.name)).second) {
      add(ViolationKind::DuplicateColumnName, col.name, "column name repeats (case-insensitive)");
    }
    if (std::holds_alternative<PrimaryKey>(col.constraint)) ++primary_keys;

    if (col.datatype == Datatype::Number) {
      if (col.size && std::holds_alternative<Length>(*col.size)) {
        add(ViolationKind::SizeKindMismatch, col.name, "NUMBER takes precision[,scale], not a length");
      } else if (col.size) {
        const auto& p = std::get<Precision>(*col.size);
        if (p.precision < 1 || p.precision > 38) {
          add(ViolationKind::PrecisionOutOfRange, col.name, "precision must be in 1..38");
        }
        if (p.scale && *p.scale < 0) {
          add(ViolationKind::PrecisionOutOfRange, col.name, "scale must be non-negative");
        } else if (p.scale && *p.scale > p.precision) {
          add(ViolationKind::ScaleExceedsPrecision, col.name, "scale exceeds precision");
        }
      }
    } else {
      if (!col.size) {
        add(ViolationKind::MissingLength, col.name, "VARCHAR2 requires a length");
      } else if (std::holds_alternative<Precision>(*col.size)) {
        add(ViolationKind::SizeKindMismatch, col.name, "VARCHAR2 takes a length, not precision");
      } else {
        const int len = std::get<Length>(*col.size).value;
        if (len < 1 || len > 4000) add(ViolationKind::LengthOutOfRange, col.name, "length must be in 1..4000");
      }
    }

    if (const auto* e = std::get_if<CheckEnum>(&col.constraint)) {
      if (e->values.empty()) add(ViolationKind::EmptyCheckEnum, col.name, "check list has no values");
      for (const auto& v : e->values) {
        if (!printable_ascii(v) || !whitespace_canonical(v) || v.find('"') != std::string::npos) {
          add(ViolationKind::IllegalEnumValue, col.name, "check value '" + v + "' is empty or not printable");
        }
      }
    }
    if (const auto* c = std::get_if<CheckComparison>(&col.constraint); c && !std::isfinite(c->literal)) {
      add(ViolationKind::NonFiniteLiteral, col.name, "check literal is not finite");
    }
  }
  if (primary_keys > 1) {
    add(ViolationKind::MultiplePrimaryKeys, spec.table_name,
        std::to_string(primary_keys) + " columns are marked primary key");
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

nlohmann::json size_json(const std::optional<SizeSpec>& size) {
  if (!size) return nullptr;
  if (const auto* l = std::get_if<Length>(&*size)) return {{"kind", "LENGTH"}, {"L", l->value}};
  const auto& p = std::get<Precision>(*size);
  nlohmann::json s = p.scale ? nlohmann::json(*p.scale) : nlohmann::json(nullptr);
  return {{"kind", "PRECISION"}, {"p", p.precision}, {"s", s}};
}

nlohmann::json constraint_json(const ConstraintSpec& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoConstraint>) {
          return {{"kind", "NONE"}};
        } else if constexpr (std::is_same_v<T, PrimaryKey>) {
          return {{"kind", "PRIMARY_KEY"}};
        } else if constexpr (std::is_same_v<T, Unique>) {
          return {{"kind", "UNIQUE"}};
        } else if constexpr (std::is_same_v<T, CheckComparison>) {
          return {{"kind", "CHECK_COMPARISON"}, {"op", std::string(to_string(v.op))}, {"literal", v.literal}};
        } else {
          return {{"kind", "CHECK_ENUM"}, {"values", v.values}};
        }
      },
      c);
}

[[noreturn]] void bad_json(const std::string& what) { throw Error("InvalidIrJson", what); }

CompareOp op_from(const std::string& s) {
  for (auto op : {CompareOp::LT, CompareOp::LE, CompareOp::GT, CompareOp::GE, CompareOp::EQ, CompareOp::NE}) {
    if (to_string(op) == s) return op;
  }
  bad_json("unknown op '" + s + "'");
}

}  // namespace

nlohmann::json to_json(const TableSpec& spec) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : spec.columns) {
    cols.push_back({{"name", c.name},
                    {"datatype", std::string(to_string(c.datatype))},
                    {"size", size_json(c.size)},
                    {"constraint", constraint_json(c.constraint)}});
  }
  return {{"table_name", spec.table_name}, {"columns", cols}};
}

nlohmann::json to_json(const Violation& v) {
  return {{"kind", std::string(to_string(v.kind))}, {"subject", v.subject}, {"message", v.message}};
}

TableSpec table_spec_from_json(const nlohmann::json& j) {
  try {
    TableSpec spec;
    spec.table_name = j.at("table_name").get<std::string>();
    for (const auto& c : j.at("columns")) {
      ColumnSpec col;
      col.name = c.at("name").get<std::string>();
      const auto dt = c.at("datatype").get<std::string>();
      if (dt == "NUMBER") {
        col.datatype = Datatype::Number;
      } else if (dt == "VARCHAR2") {
        col.datatype = Datatype::Varchar2;
      } else {
        bad_json("unknown datatype '" + dt + "'");
      }
      if (const auto& s = c.at("size"); !s.is_null()) {
        const auto kind = s.at("kind").get<std::string>();
        if (kind == "LENGTH") {
          col.size = Length{s.at("L").get<int>()};
        } else if (kind == "PRECISION") {
          Precision p{s.at("p").get<int>(), {}};
          if (!s.at("s").is_null()) p.scale = s.at("s").get<int>();
          col.size = p;
        } else {
          bad_json("unknown size kind '" + kind + "'");
        }
      }
      const auto& k = c.at("constraint");
      const auto kind = k.at("kind").get<std::string>();
      if (kind == "NONE") {
        col.constraint = NoConstraint{};
      } else if (kind == "PRIMARY_KEY") {
        col.constraint = PrimaryKey{};
      } else if (kind == "UNIQUE") {
        col.constraint = Unique{};
      } else if (kind == "CHECK_COMPARISON") {
        col.constraint = CheckComparison{op_from(k.at("op").get<std::string>()), k.at("literal").get<double>()};
      } else if (kind == "CHECK_ENUM") {
        col.constraint = CheckEnum{k.at("values").get<std::vector<std::string>>()};
      } else {
        bad_json("unknown constraint kind '" + kind + "'");
      }
      spec.columns.push_back(std::move(col));
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    bad_json(e.what());
  }
}

}  // namespace campus::tablespec
