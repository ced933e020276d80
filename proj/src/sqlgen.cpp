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

#include "campus/sqlgen.hpp"

#include <algorithm>
#include <cctype>

namespace campus::sqlgen {

using namespace tablespec;

namespace {

std::string summarize(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.kind)) + " (" + v.subject + "): " + v.message;
  }
  return out;
}

void require_valid(const TableSpec& spec) {
  if (auto vs = validate(spec); !vs.empty()) throw InvalidSpec(std::move(vs));
}

class Keywords {
 public:
  explicit Keywords(KeywordCase c) : upper_(c == KeywordCase::Upper) {}

  std::string operator()(std::string_view kw) const {
    std::string s(kw);
    if (upper_) {
      std::transform(s.begin(), s.end(), s.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    }
    return s;
  }

 private:
  bool upper_;
};

std::string sql_string(std::string_view v) {
  std::string out = "'";
  for (char c : v) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::string size_suffix(const ColumnSpec& col) {
  if (!col.size) return {};
  if (const auto* l = std::get_if<Length>(&*col.size)) return "(" + std::to_string(l->value) + ")";
  const auto& p = std::get<Precision>(*col.size);
  std::string s = "(" + std::to_string(p.precision);
  if (p.scale) s += "," + std::to_string(*p.scale);
  return s + ")";
}

}  // namespace

InvalidSpec::InvalidSpec(std::vector<Violation> violations)
    : Error("InvalidSpec", summarize(violations)), violations_(std::move(violations)) {}

std::string constraint_name(std::string_view table_name, int ordinal) {
  std::string initials;
  bool word_start = true;
  for (char c : table_name) {
    if (c == '_') {
      word_start = true;
      continue;
    }
    if (word_start) initials += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    word_start = false;
  }
  return initials + "CH" + std::to_string(ordinal);
}

std::string generate_ddl(const TableSpec& spec, const DdlOptions& opts) {
  require_valid(spec);
  if (opts.indent < 0 || opts.indent > 16) {
    throw Error("InvalidOptions", "indent must be in 0..16, got " + std::to_string(opts.indent));
  }
  const Keywords kw(opts.keyword_case);
  const std::string pad(static_cast<std::size_t>(opts.indent), ' ');

  int checks = 0;
  const auto next_check_name = [&] {
    ++checks;
    if (opts.constraint_prefix_override) return *opts.constraint_prefix_override + std::to_string(checks);
    return constraint_name(spec.table_name, checks);
  };

  std::string out = kw("create table") + " " + spec.table_name + " (\n";
  for (std::size_t i = 0; i < spec.columns.size(); ++i) {
    const auto& col = spec.columns[i];
    std::string line = pad + col.name + " ";
    line += kw(col.datatype == Datatype::Number ? "number" : "varchar2") + size_suffix(col);

    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, PrimaryKey>) {
            line += " " + kw("primary key");
          } else if constexpr (std::is_same_v<T, Unique>) {
            line += " " + kw("unique");
          } else if constexpr (std::is_same_v<T, CheckComparison>) {
            line += " " + kw("constraint") + " " + next_check_name() + " " + kw("check") + " (" + col.name + " " +
                    std::string(sql_operator(c.op)) + " " + format_literal(c.literal) + ")";
          } else if constexpr (std::is_same_v<T, CheckEnum>) {
            line += " " + kw("constraint") + " " + next_check_name() + " " + kw("check") + " (";
            for (std::size_t k = 0; k < c.values.size(); ++k) {
              if (k) line += " " + kw("or") + " ";
              line += col.name + " = " + sql_string(c.values[k]);
            }
            line += ")";
          }
        },
        col.constraint);

    if (i + 1 < spec.columns.size()) line += ",";
    out += line + "\n";
  }
  return out + ");";
}

std::string render_spec_text(const TableSpec& spec) {
  require_valid(spec);
  std::string out = spec.table_name + "\nColumn Name Data type Size Constraint\n";
  for (const auto& col : spec.columns) {
    std::string line = col.name + (col.datatype == Datatype::Number ? " Number" : " Varchar2");
    if (col.size) {
      if (const auto* l = std::get_if<Length>(&*col.size)) {
        line += " " + std::to_string(l->value);
      } else {
        const auto& p = std::get<Precision>(*col.size);
        line += " " + std::to_string(p.precision);
        if (p.scale) line += "," + std::to_string(*p.scale);
      }
    }
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, PrimaryKey>) {
            line += " Primary key";
          } else if constexpr (std::is_same_v<T, Unique>) {
            line += " Unique";
          } else if constexpr (std::is_same_v<T, CheckComparison>) {
            line += " Check " + std::string(sql_operator(c.op)) + format_literal(c.literal);
          } else if constexpr (std::is_same_v<T, CheckEnum>) {
            line += " Check";
            for (std::size_t k = 0; k < c.values.size(); ++k) {
              line += (k ? " or \"" : " \"") + c.values[k] + "\"";
            }
          }
        },
        col.constraint);
    out += line + "\n";
  }
  return out;
}

}  // namespace campus::sqlgen
