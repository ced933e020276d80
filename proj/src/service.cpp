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

#include "campus/service.hpp"

#include <fstream>

#include <httplib.h>
#include <spdlog/spdlog.h>

namespace campus::service {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void config_error(const std::string& detail) { throw Error("ConfigError", detail); }

std::optional<LogLevel> log_level_from(std::string_view s) {
  for (auto l : {LogLevel::Error, LogLevel::Warn, LogLevel::Info, LogLevel::Debug}) {
    if (to_string(l) == s) return l;
  }
  return std::nullopt;
}

// Malformed request bodies are 400s, not domain errors.
struct BadRequest {
  std::string detail;
};

json parse_body(std::string_view body) {
  auto j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw BadRequest{"request body is not a JSON object"};
  return j;
}

std::string string_field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end() || !it->is_string()) throw BadRequest{std::string("field '") + name + "' must be a string"};
  return it->get<std::string>();
}

HttpResponse not_found(std::string detail) { return {404, {{"error", "NotFound"}, {"detail", std::move(detail)}}}; }

std::vector<std::string_view> path_segments(std::string_view path) {
  std::vector<std::string_view> out;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    const auto slash = path.find('/');
    out.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return out;
}

HttpResponse staff_list(const Snapshot& s) {
  json list = json::array();
  for (const auto& [id, rec] : s.directory.staff()) list.push_back(staff::to_json(rec));
  return {200, {{"staff", list}}};
}

HttpResponse scan(const Snapshot& s, const json& body) {
  const auto payload = staff::parse_payload(string_field(body, "payload"));
  const auto& node = s.graph.node(payload.node_id);
  if (node.building != payload.building || node.floor != payload.floor) {
    throw Error("PayloadMismatch", "payload places node '" + payload.node_id + "' in " + payload.building +
                                       " floor " + std::to_string(payload.floor) + ", graph says " + node.building +
                                       " floor " + std::to_string(node.floor));
  }
  json staff_json = nullptr;
  if (payload.staff_id) staff_json = staff::to_json(s.directory.staff_member(*payload.staff_id));
  return {200, {{"payload", staff::to_json(payload)}, {"node", nav::to_json(node)}, {"staff", staff_json}}};
}

HttpResponse route(const Snapshot& s, const json& body) {
  const auto from = string_field(body, "from_node");
  const auto& dest = s.directory.staff_member(string_field(body, "staff_id"));
  const auto r = nav::shortest_route(s.graph, from, dest.desk_node);
  return {200, route_response(s.graph, r.nodes, &dest)};
}

HttpResponse relocalize(const Snapshot& s, const json& body) {
  const auto it = body.find("route");
  if (it == body.end() || !it->is_array()) throw BadRequest{"field 'route' must be an array of node ids"};
  std::vector<nav::NodeId> route;
  for (const auto& id : *it) {
    if (!id.is_string()) throw BadRequest{"field 'route' must be an array of node ids"};
    route.push_back(id.get<std::string>());
  }
  const auto scanned = string_field(body, "scanned");
  const auto nodes = nav::re_localize(s.graph, route, scanned);

  const staff::StaffRecord* dest = nullptr;
  if (body.contains("staff_id")) {
    dest = &s.directory.staff_member(string_field(body, "staff_id"));
  } else {
    dest = s.directory.staff_at(nodes.back());
  }
  return {200, route_response(s.graph, nodes, dest)};
}

}  // namespace

std::string_view to_string(LogLevel l) {
  switch (l) {
    case LogLevel::Error: return "ERROR";
    case LogLevel::Warn: return "WARN";
    case LogLevel::Info: return "INFO";
    case LogLevel::Debug: return "DEBUG";
  }
  return "INFO";
}

AppConfig config_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) config_error("config must be a JSON object");
  AppConfig cfg;
  const auto path_of = [&](const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) config_error(std::string("missing string field '") + key + "'");
    fs::path p = it->get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    if (!fs::exists(p)) config_error(std::string(key) + " '" + p.string() + "' does not exist");
    return p;
  };
  cfg.graph_path = path_of("graph_path");
  cfg.staff_path = path_of("staff_path");
  cfg.advisors_path = path_of("advisors_path");

  const auto address = j.value("listen_address", std::string("127.0.0.1:8080"));
  const auto colon = address.rfind(':');
  if (colon == std::string::npos) config_error("listen_address '" + address + "' is not host:port");
  cfg.host = address.substr(0, colon);
  try {
    std::size_t used = 0;
    cfg.port = std::stoi(address.substr(colon + 1), &used);
    if (used != address.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::logic_error&) {
    config_error("listen_address '" + address + "' has a non-numeric port");
  }
  if (cfg.port < 1 || cfg.port > 65535) config_error("port " + std::to_string(cfg.port) + " outside 1..65535");

  const auto level = j.value("log_level", std::string("INFO"));
  const auto parsed = log_level_from(level);
  if (!parsed) config_error("log_level '" + level + "' is not ERROR, WARN, INFO or DEBUG");
  cfg.log_level = *parsed;

  if (j.contains("static_dir")) cfg.static_dir = path_of("static_dir");
  return cfg;
}

AppConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) config_error("cannot open config " + file.string());
  const auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) config_error(file.string() + " is not valid JSON");
  return config_from_json(j, file.parent_path());
}

std::shared_ptr<const Snapshot> load_snapshot(const AppConfig& cfg, std::uint64_t generation) {
  auto graph = nav::load_graph(cfg.graph_path);
  auto directory = staff::load_directory(cfg.staff_path, cfg.advisors_path, graph);
  return std::make_shared<const Snapshot>(Snapshot{std::move(graph), std::move(directory), generation});
}

json route_response(const nav::CampusGraph& g, const std::vector<nav::NodeId>& nodes,
                    const staff::StaffRecord* destination) {
  json steps = json::array();
  for (const auto& step : nav::make_instructions(g, nodes)) steps.push_back(nav::to_json(step));
  return {{"nodes", nodes},
          {"steps", steps},
          {"total_m", nav::path_length(g, nodes)},
          {"destination_staff", destination ? staff::to_json(*destination) : json(nullptr)}};
}

HttpResponse error_response(const Error& e) {
  int status = 422;
  if (const auto* g = dynamic_cast<const nav::GraphError*>(&e); g && g->code() == nav::GraphErrc::UnknownNode) {
    status = 404;
  }
  if (const auto* d = dynamic_cast<const staff::DirectoryError*>(&e)) {
    if (d->code() == staff::DirectoryErrc::UnknownStudent || d->code() == staff::DirectoryErrc::UnknownStaff) {
      status = 404;
    }
  }
  return {status, {{"error", e.kind()}, {"detail", e.detail()}}};
}

Api::Api(AppConfig config) : config_(std::move(config)), current_(load_snapshot(config_, 1)) {}

std::shared_ptr<const Snapshot> Api::snapshot() const { return std::atomic_load(&current_); }

HttpResponse Api::reload() {
  const std::lock_guard lock(reload_mutex_);
  const auto old = snapshot();
  try {
    auto next = load_snapshot(config_, old->generation + 1);
    const auto staff_count = next->directory.staff().size();
    const auto node_count = next->graph.nodes().size();
    const auto generation = next->generation;
    std::atomic_store(&current_, std::shared_ptr<const Snapshot>(std::move(next)));
    spdlog::info("reloaded snapshot {} ({} nodes, {} staff)", generation, node_count, staff_count);
    return {200, {{"status", "reloaded"}, {"generation", generation}, {"nodes", node_count}, {"staff", staff_count}}};
  } catch (const Error& e) {
    spdlog::warn("reload failed, keeping snapshot {}: {}", old->generation, e.what());
    return error_response(e);
  }
}

HttpResponse Api::handle(std::string_view method, std::string_view path, std::string_view body) {
  const auto seg = path_segments(path);
  if (seg.size() < 2 || seg[0] != "api") return not_found("no route for " + std::string(path));
  const auto snap = snapshot();
  const auto& s = *snap;
  const bool get = method == "GET";
  const bool post = method == "POST";

  try {
    const auto& name = seg[1];
    if (name == "staff" && seg.size() == 2 && get) return staff_list(s);
    if (name == "staff" && seg.size() == 3 && get) return {200, staff::to_json(s.directory.staff_member(seg[2]))};
    if (name == "advisor" && seg.size() == 3 && get) {
      return {200, {{"student_id", std::string(seg[2])}, {"advisor", staff::to_json(staff::advisor_of(s.directory, seg[2]))}}};
    }
    if (name == "graph" && seg.size() == 2 && get) return {200, nav::to_json(s.graph)};
    if (seg.size() == 2 && post) {
      if (name == "scan") return scan(s, parse_body(body));
      if (name == "route") return route(s, parse_body(body));
      if (name == "relocalize") return relocalize(s, parse_body(body));
      if (name == "reload") return reload();
    }
    const bool known = seg.size() == 2 ? name == "staff" || name == "graph" || name == "scan" || name == "route" ||
                                             name == "relocalize" || name == "reload"
                                       : seg.size() == 3 && (name == "staff" || name == "advisor");
    if (known) {
      return {405, {{"error", "MethodNotAllowed"}, {"detail", std::string(method) + " " + std::string(path)}}};
    }
    return not_found("no route for " + std::string(path));
  } catch (const BadRequest& e) {
    return {400, {{"error", "BadRequest"}, {"detail", e.detail}}};
  } catch (const Error& e) {
    return error_response(e);
  }
}

HttpServer::HttpServer(Api& api) : api_(api), server_(std::make_unique<httplib::Server>()) {
  const auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const auto out = api_.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
    spdlog::debug("{} {} -> {}", req.method, req.path, out.status);
  };
  server_->Get(R"(/api/.*)", forward);
  server_->Post(R"(/api/.*)", forward);
  if (api_.config().static_dir) server_->set_mount_point("/", api_.config().static_dir->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  if (!server_->bind_to_port(host, port)) throw Error("BindFailed", "cannot listen on " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

}  // namespace campus::service
