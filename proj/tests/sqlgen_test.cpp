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

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "campus/sqlgen.hpp"
#include "support/test_support.hpp"

using namespace campus;
using namespace campus::tablespec;
using campus::sqlgen::generate_ddl;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TableSpec student_mark() { return parse_table_spec(slurp(testing::testdata("studentmark.txt"))); }

}  // namespace

TEST_CASE("student mark DDL matches the golden file") {
  auto golden = slurp(testing::testdata("studentmark.sql"));
  REQUIRE(golden.back() == '\n');
  golden.pop_back();
  const auto ddl = generate_ddl(student_mark());
  CHECK(ddl == golden);

  const auto lines = lines_of(ddl);
  REQUIRE(lines.size() == 12);
  CHECK(lines[8] == "Total number(6,3) constraint SMCH1 check (Total < 100),");
  CHECK(lines[10].find("constraint SMCH2 check (Result = 'pass' or Result = 'fail')") != std::string::npos);
}

TEST_CASE("minimal spec") {
  const auto spec = parse_table_spec("T\nColumn Name Data type Size Constraint\nId Number 1");
  CHECK(generate_ddl(spec) == "create table T (\nId number(1)\n);");
}

TEST_CASE("options") {
  const auto spec = parse_table_spec(
      "Big Order Line\nColumn Name Data type Size Constraint\nId Number Primary key\nQty Number 4 Check >= 1\n"
      "Note Varchar2 8 Check \"it's\" or \"no\"");
  sqlgen::DdlOptions upper;
  upper.keyword_case = sqlgen::KeywordCase::Upper;
  upper.indent = 2;
  CHECK(generate_ddl(spec, upper) ==
        "CREATE TABLE Big_Order_Line (\n"
        "  Id NUMBER PRIMARY KEY,\n"
        "  Qty NUMBER(4) CONSTRAINT BOLCH1 CHECK (Qty >= 1),\n"
        "  Note VARCHAR2(8) CONSTRAINT BOLCH2 CHECK (Note = 'it''s' OR Note = 'no')\n"
        ");");

  sqlgen::DdlOptions prefixed;
  prefixed.constraint_prefix_override = "CK_";
  CHECK(generate_ddl(spec, prefixed).find("constraint CK_1 check (Qty >= 1)") != std::string::npos);

  sqlgen::DdlOptions bad;
  bad.indent = -1;
  CHECK_THROWS_AS(generate_ddl(spec, bad), Error);
}

TEST_CASE("constraint_name applies the initials rule") {
  CHECK(sqlgen::constraint_name("Student_Mark", 1) == "SMCH1");
  CHECK(sqlgen::constraint_name("Student_Mark", 2) == "SMCH2");
  CHECK(sqlgen::constraint_name("Orders", 1) == "OCH1");
  CHECK(sqlgen::constraint_name("big_order_line", 12) == "BOLCH12");
}

TEST_CASE("invalid specs are refused with their violations") {
  auto spec = student_mark();
  spec.columns[1].constraint = PrimaryKey{};
  try {
    generate_ddl(spec);
    FAIL("expected InvalidSpec");
  } catch (const sqlgen::InvalidSpec& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].kind == ViolationKind::MultiplePrimaryKeys);
  }
}

TEST_CASE("render_spec_text") {
  const auto spec = parse_table_spec("T\nColumn Name Data type Size Constraint\nId Number 1");
  CHECK(sqlgen::render_spec_text(spec) == "T\nColumn Name Data type Size Constraint\nId Number 1\n");
  CHECK(parse_table_spec(sqlgen::render_spec_text(student_mark())) == student_mark());
}

TEST_CASE("generated DDL structure mirrors the spec") {
  testing::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto spec = testing::random_table_spec(rng);
    const auto lines = lines_of(generate_ddl(spec));
    REQUIRE(lines.size() == spec.columns.size() + 2);
    CHECK(lines.front() == "create table " + spec.table_name + " (");
    CHECK(lines.back() == ");");
    int checks = 0;
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
      const auto& line = lines[c + 1];
      CHECK(line.rfind(spec.columns[c].name + " ", 0) == 0);
      CHECK((line.back() == ',') == (c + 1 < spec.columns.size()));
      const bool is_check = std::holds_alternative<CheckComparison>(spec.columns[c].constraint) ||
                            std::holds_alternative<CheckEnum>(spec.columns[c].constraint);
      if (is_check) {
        ++checks;
        CHECK(line.find(" constraint " + sqlgen::constraint_name(spec.table_name, checks) + " check (") !=
              std::string::npos);
      }
    }
  }
}
