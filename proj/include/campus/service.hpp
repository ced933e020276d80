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
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "campus/navgraph.hpp"
#include "campus/staffdir.hpp"

namespace httplib {
class Server;
}

namespace campus::service {

enum class LogLevel { Error, Warn, Info, Debug };

std::string_view to_string(LogLevel l);

struct AppConfig {
  std::filesystem::path graph_path;
  std::filesystem::path staff_path;
  std::filesystem::path advisors_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  LogLevel log_level = LogLevel::Info;
  /// Optional directory served at `/` (the walkthrough UI bundle).
  std::optional<std::filesystem::path> static_dir;
};

inline constexpr std::string_view kConfigEnvVar = "CAMPUS_AR_CONFIG";

/// Parses the JSON config. Relative paths resolve against `base_dir`.
/// Throws campus::Error("ConfigError", ...) on bad fields, a port outside
/// 1..65535, or a missing file.
AppConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
AppConfig load_config(const std::filesystem::path& file);

/// Graph and directory loaded together. Requests read exactly one snapshot.
struct Snapshot {
  nav::CampusGraph graph;
  staff::Directory directory;
  std::uint64_t generation = 0;
};

std::shared_ptr<const Snapshot> load_snapshot(const AppConfig& cfg, std::uint64_t generation = 1);

/// RouteResponse wire form: `nodes`, `steps`, `total_m`, `destination_staff`.
nlohmann::json route_response(const nav::CampusGraph& g, const std::vector<nav::NodeId>& nodes,
                              const staff::StaffRecord* destination);

struct HttpResponse {
  int status = 200;
  nlohmann::json body;
};

/// JSON API over an atomically swappable snapshot. `handle` is safe to call
/// from any number of threads, including concurrently with `reload`.
class Api {
 public:
  /// Loads the initial snapshot; throws on failure.
  explicit Api(AppConfig config);

  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

  /// Rereads the fixture files and swaps them in as one snapshot. The old
  /// snapshot stays live when loading fails.
  HttpResponse reload();

  std::shared_ptr<const Snapshot> snapshot() const;
  const AppConfig& config() const noexcept { return config_; }

 private:
  AppConfig config_;
  std::shared_ptr<const Snapshot> current_;  // accessed only via std::atomic_load/store
  std::mutex reload_mutex_;                  // serializes writers; readers never take it
};

/// Error body `{error, detail}` with the status the API maps `e` to.
HttpResponse error_response(const Error& e);

/// cpp-httplib binding of an Api.
class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds `host:port` (port 0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  Api& api_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace campus::service
