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

// campus_ar: command-line front end for the table-spec, QR and wayfinding
// pipelines. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "campus/navgraph.hpp"
#include "campus/qr/error.hpp"
#include "campus/qr/symbol.hpp"
#include "campus/service.hpp"
#include "campus/sqlgen.hpp"
#include "campus/staffdir.hpp"
#include "campus/tablespec.hpp"

namespace {

using namespace campus;

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("IoError", "cannot write " + path);
}

tablespec::TableSpec parse_valid_spec(const std::string& input) {
  auto doc = tablespec::make_document(read_input(input), input.empty() ? "<stdin>" : input);
  auto spec = tablespec::parse_table_spec(doc);
  if (auto vs = tablespec::validate(spec); !vs.empty()) throw sqlgen::InvalidSpec(std::move(vs));
  return spec;
}

service::AppConfig resolve_config(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv(std::string(service::kConfigEnvVar).c_str())) path = env;
  }
  if (path.empty()) {
    throw CLI::ValidationError("--config", "no config given and " + std::string(service::kConfigEnvVar) + " is unset");
  }
  return service::load_config(path);
}

spdlog::level::level_enum spd_level(service::LogLevel l) {
  switch (l) {
    case service::LogLevel::Error: return spdlog::level::err;
    case service::LogLevel::Warn: return spdlog::level::warn;
    case service::LogLevel::Info: return spdlog::level::info;
    case service::LogLevel::Debug: return spdlog::level::debug;
  }
  return spdlog::level::info;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Campus AR tools: table-spec to SQL, QR staff-location codes, indoor routing"};
  app.require_subcommand(1);

  std::string input;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a table-spec text into IR JSON");
  parse_cmd->add_option("input", input, "Spec text file (default: stdin)");

  bool upper = false;
  int indent = 0;
  std::string prefix;
  auto* ddl_cmd = app.add_subcommand("ddl", "Generate CREATE TABLE DDL from a table-spec text");
  ddl_cmd->add_option("input", input, "Spec text file (default: stdin)");
  ddl_cmd->add_flag("--upper", upper, "Uppercase SQL keywords");
  ddl_cmd->add_option("--indent", indent, "Spaces before each column line")->check(CLI::Range(0, 16));
  ddl_cmd->add_option("--constraint-prefix", prefix, "Check-constraint name prefix instead of <initials>CH");

  std::string payload;
  std::string level = "M";
  std::string out_path;
  int version = 0;
  int mask = -1;
  bool ascii = false;
  auto* enc_cmd = app.add_subcommand("qr-encode", "Encode a payload as a QR bit matrix");
  enc_cmd->add_option("payload", payload, "Payload text")->required();
  enc_cmd->add_option("--level", level, "Error correction level")->check(CLI::IsMember({"L", "M"}));
  enc_cmd->add_option("--version", version, "Force version 1-3")->check(CLI::Range(1, 3));
  enc_cmd->add_option("--mask", mask, "Force mask 0-7")->check(CLI::Range(0, 7));
  enc_cmd->add_option("--out", out_path, "Write the matrix text here (default: stdout)");
  enc_cmd->add_flag("--ascii", ascii, "Print a terminal rendering instead of the matrix text");

  std::string matrix_path;
  auto* dec_cmd = app.add_subcommand("qr-decode", "Decode a QR bit matrix text file");
  dec_cmd->add_option("matrix", matrix_path, "Matrix text file ('-' for stdin)")->required();

  std::string config_path;
  std::string from_node;
  std::string staff_id;
  auto* route_cmd = app.add_subcommand("route", "Route from a node to a staff member's desk");
  route_cmd->add_option("--from", from_node, "Start node id")->required();
  route_cmd->add_option("--staff", staff_id, "Destination staff id")->required();
  route_cmd->add_option("--config", config_path, "Service config JSON (default: $CAMPUS_AR_CONFIG)");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON API");
  serve_cmd->add_option("--config", config_path, "Service config JSON (default: $CAMPUS_AR_CONFIG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*parse_cmd) {
      std::cout << tablespec::to_json(parse_valid_spec(input)).dump(2) << "\n";
    } else if (*ddl_cmd) {
      sqlgen::DdlOptions opts;
      opts.keyword_case = upper ? sqlgen::KeywordCase::Upper : sqlgen::KeywordCase::Lower;
      opts.indent = indent;
      if (!prefix.empty()) opts.constraint_prefix_override = prefix;
      std::cout << sqlgen::generate_ddl(parse_valid_spec(input), opts) << "\n";
    } else if (*enc_cmd) {
      qr::ForcedConfig forced;
      if (version) forced.version = version;
      if (mask >= 0) forced.mask = mask;
      const auto sym = qr::encode_symbol(payload, *qr::ec_level_from_string(level), forced);
      write_output(out_path, ascii ? qr::to_ascii_art(sym.matrix) : qr::to_text(sym.matrix));
      std::cerr << "version " << sym.config.version << "-" << qr::to_string(sym.config.ec_level) << ", mask "
                << sym.config.mask << "\n";
    } else if (*dec_cmd) {
      const auto report = qr::decode_symbol(qr::bit_matrix_from_text(read_input(matrix_path)));
      nlohmann::json j{{"payload", report.payload_text()},
                       {"corrected_errors", report.corrected_errors},
                       {"orientation_applied", std::string(qr::to_string(report.orientation_applied))},
                       {"config",
                        {{"version", report.config.version},
                         {"ec_level", std::string(qr::to_string(report.config.ec_level))},
                         {"mask", report.config.mask}}}};
      std::cout << j.dump(2) << "\n";
    } else if (*route_cmd) {
      const auto snap = service::load_snapshot(resolve_config(config_path));
      const auto& dest = snap->directory.staff_member(staff_id);
      const auto r = nav::shortest_route(snap->graph, from_node, dest.desk_node);
      std::cout << service::route_response(snap->graph, r.nodes, &dest).dump(2) << "\n";
    } else if (*serve_cmd) {
      const auto cfg = resolve_config(config_path);
      spdlog::set_level(spd_level(cfg.log_level));
      service::Api api(cfg);
      service::HttpServer server(api);
      const int port = server.bind(cfg.host, cfg.port);
      spdlog::info("listening on {}:{}", cfg.host, port);
      server.listen();
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.detail() << "\n";
    return kDomainError;
  }
  return 0;
}
