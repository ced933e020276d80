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

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "support/test_support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI through the shell with stdout and stderr captured to files.
RunResult run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto base = fs::temp_directory_path() / ("campus_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const auto out = base.string() + ".out";
  const auto err = base.string() + ".err";
  const std::string cmd = env + " '" + std::string(CAMPUS_AR_BINARY) + "' " + args + " >'" + out + "' 2>'" + err + "'";
  const int status = std::system(cmd.c_str());
  RunResult r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  fs::remove(out);
  fs::remove(err);
  return r;
}

std::string data(const std::string& name) { return "'" + campus::testing::testdata(name).string() + "'"; }

}  // namespace

TEST_CASE("ddl reproduces the golden file from stdin") {
  const auto r = run("ddl < " + data("studentmark.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == slurp(campus::testing::testdata("studentmark.sql")));
}

TEST_CASE("ddl options") {
  const auto r = run("ddl --upper --indent 4 --constraint-prefix X " + data("studentmark.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("CREATE TABLE Student_Mark (\n    Stud_id NUMBER(9) PRIMARY KEY,", 0) == 0);
  CHECK(r.out.find("CONSTRAINT X1 CHECK (Total < 100)") != std::string::npos);
  CHECK(run("ddl --indent -3 " + data("studentmark.txt")).exit_code == 2);
}

TEST_CASE("parse emits the IR") {
  const auto r = run("parse " + data("studentmark.txt"));
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["table_name"] == "Student_Mark");
  CHECK(j["columns"].size() == 10);
}

TEST_CASE("domain errors exit 1 with the kind on stderr") {
  const auto r = run("parse", "printf 'T\\nColumn Name Data type Size Constraint\\nGrade Nmber 2\\n' |");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("UnknownDatatype") != std::string::npos);

  const auto invalid = run("ddl", "printf 'T\\nColumn Name Data type Size Constraint\\nA Number 3,5\\n' |");
  CHECK(invalid.exit_code == 1);
  CHECK(invalid.err.find("InvalidSpec") != std::string::npos);

  CHECK(run("parse /nonexistent.txt").exit_code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("qr-encode").exit_code == 2);
  CHECK(run("qr-encode x --level H").exit_code == 2);
  CHECK(run("route --from N01").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("qr-encode then qr-decode round trips") {
  const auto matrix = fs::temp_directory_path() / ("campus_cli_matrix_" + std::to_string(::getpid()) + ".txt");
  const auto enc = run("qr-encode 'HCTIS1|ENG|1|N07|S1042' --level M --out '" + matrix.string() + "'");
  REQUIRE(enc.exit_code == 0);
  CHECK(slurp(matrix).rfind("25\n", 0) == 0);

  const auto dec = run("qr-decode '" + matrix.string() + "'");
  REQUIRE(dec.exit_code == 0);
  const auto j = json::parse(dec.out);
  CHECK(j["payload"] == "HCTIS1|ENG|1|N07|S1042");
  CHECK(j["config"]["version"] == 2);
  CHECK(j["config"]["ec_level"] == "M");
  CHECK(j["corrected_errors"] == 0);
  fs::remove(matrix);

  const auto piped = run("qr-decode -", "'" + std::string(CAMPUS_AR_BINARY) + "' qr-encode hello --version 3 --mask 5 |");
  REQUIRE(piped.exit_code == 0);
  CHECK(json::parse(piped.out)["config"]["mask"] == 5);

  CHECK(run("qr-encode " + std::string(60, 'x')).exit_code == 1);
  CHECK(run("qr-decode", "printf '21\\n#\\n' |").exit_code == 2);
  CHECK(run("qr-decode -", "printf '21\\n#\\n' |").exit_code == 1);
}

TEST_CASE("route via flag and environment") {
  const auto r = run("route --from N01 --staff S1042 --config " + data("config.json"));
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["nodes"] == json::array({"N01", "N04", "N07"}));
  CHECK(j["total_m"] == 26.0);

  const auto env = run("route --from N06 --staff S1042", "CAMPUS_AR_CONFIG=" + data("config.json"));
  CHECK(env.exit_code == 0);

  CHECK(run("route --from N01 --staff S1042", "CAMPUS_AR_CONFIG=").exit_code == 2);
  CHECK(run("route --from N99 --staff S1042 --config " + data("config.json")).exit_code == 1);
}
