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

#include "campus/navgraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace campus::nav {

namespace {

[[noreturn]] void fail(GraphErrc code, std::string detail) { throw GraphError(code, std::move(detail)); }

std::pair<NodeId, NodeId> edge_key(std::string_view a, std::string_view b) {
  return a < b ? std::pair{NodeId(a), NodeId(b)} : std::pair{NodeId(b), NodeId(a)};
}

bool floor_change(EdgeKind k) { return k == EdgeKind::Stairs || k == EdgeKind::Lift; }

template <typename Enum, std::size_t N>
Enum enum_from(const std::string& text, const Enum (&all)[N], const char* what) {
  for (auto e : all) {
    if (to_string(e) == text) return e;
  }
  fail(GraphErrc::ParseError, std::string("unknown ") + what + " '" + text + "'");
}

constexpr NodeKind kNodeKinds[] = {NodeKind::Entrance, NodeKind::Junction, NodeKind::Desk, NodeKind::Stairs,
                                   NodeKind::Lift};
constexpr EdgeKind kEdgeKinds[] = {EdgeKind::Corridor, EdgeKind::Door, EdgeKind::Stairs, EdgeKind::Lift};

bool shorter(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return a < b - kLengthTieTolerance * scale;
}

bool same_length(double a, double b) { return !shorter(a, b) && !shorter(b, a); }

std::string meters(double d) {
  const long m = std::lround(d);
  return std::to_string(m) + (m == 1 ? " meter" : " meters");
}

const std::string& spoken_name(const Node& n) { return n.label.empty() ? n.id : n.label; }

}  // namespace

std::string_view to_string(GraphErrc code) {
  switch (code) {
    case GraphErrc::ParseError: return "ParseError";
    case GraphErrc::DuplicateNode: return "DuplicateNode";
    case GraphErrc::DanglingEdge: return "DanglingEdge";
    case GraphErrc::BadEdgeFloors: return "BadEdgeFloors";
    case GraphErrc::NonPositiveLength: return "NonPositiveLength";
    case GraphErrc::UnknownNode: return "UnknownNode";
    case GraphErrc::Unreachable: return "Unreachable";
    case GraphErrc::InvalidPath: return "InvalidPath";
  }
  return "GraphError";
}

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Entrance: return "ENTRANCE";
    case NodeKind::Junction: return "JUNCTION";
    case NodeKind::Desk: return "DESK";
    case NodeKind::Stairs: return "STAIRS";
    case NodeKind::Lift: return "LIFT";
  }
  return "?";
}

std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Corridor: return "CORRIDOR";
    case EdgeKind::Door: return "DOOR";
    case EdgeKind::Stairs: return "STAIRS";
    case EdgeKind::Lift: return "LIFT";
  }
  return "?";
}

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Start: return "START";
    case Action::Continue: return "CONTINUE";
    case Action::TurnLeft: return "TURN_LEFT";
    case Action::TurnRight: return "TURN_RIGHT";
    case Action::TakeStairsUp: return "TAKE_STAIRS_UP";
    case Action::TakeStairsDown: return "TAKE_STAIRS_DOWN";
    case Action::TakeLift: return "TAKE_LIFT";
    case Action::Arrive: return "ARRIVE";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// CampusGraph
// ---------------------------------------------------------------------------

CampusGraph::CampusGraph(std::vector<Node> nodes, std::vector<Edge> edges) : edges_(std::move(edges)) {
  for (auto& n : nodes) {
    if (n.id.empty()) fail(GraphErrc::ParseError, "node with empty id");
    if (!n.position.allFinite()) fail(GraphErrc::ParseError, "node '" + n.id + "' has non-finite coordinates");
    const auto id = n.id;
    if (!nodes_.emplace(id, std::move(n)).second) fail(GraphErrc::DuplicateNode, "node '" + id + "' is defined twice");
  }
  for (const auto& [id, n] : nodes_) adjacency_[id];

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const auto name = "edge " + e.a + "-" + e.b;
    for (const auto* end : {&e.a, &e.b}) {
      if (!nodes_.count(*end)) fail(GraphErrc::DanglingEdge, name + " references missing node '" + *end + "'");
    }
    if (e.a == e.b) fail(GraphErrc::ParseError, name + " is a self-loop");
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      fail(GraphErrc::NonPositiveLength, name + " has length " + std::to_string(e.length));
    }
    const bool floors_differ = nodes_.at(e.a).floor != nodes_.at(e.b).floor;
    if (floor_change(e.kind) != floors_differ) {
      fail(GraphErrc::BadEdgeFloors, name + " is " + std::string(to_string(e.kind)) +
                                         (floors_differ ? " but joins different floors" : " but stays on one floor"));
    }
    const auto key = edge_key(e.a, e.b);
    auto [it, inserted] = best_edge_.emplace(key, i);
    if (!inserted && e.length < edges_[it->second].length) it->second = i;
  }

  for (const auto& [key, idx] : best_edge_) {
    const double len = edges_[idx].length;
    adjacency_[key.first].push_back({key.second, len});
    adjacency_[key.second].push_back({key.first, len});
  }
  for (auto& [id, list] : adjacency_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });
  }
}

bool CampusGraph::contains(std::string_view id) const { return nodes_.find(NodeId(id)) != nodes_.end(); }

const Node& CampusGraph::node(std::string_view id) const {
  const auto it = nodes_.find(NodeId(id));
  if (it == nodes_.end()) fail(GraphErrc::UnknownNode, "node '" + std::string(id) + "' does not exist");
  return it->second;
}

const Edge* CampusGraph::edge_between(std::string_view a, std::string_view b) const {
  const auto it = best_edge_.find(edge_key(a, b));
  return it == best_edge_.end() ? nullptr : &edges_[it->second];
}

const std::vector<CampusGraph::Neighbor>& CampusGraph::neighbors(std::string_view id) const {
  const auto it = adjacency_.find(id);
  if (it == adjacency_.end()) fail(GraphErrc::UnknownNode, "node '" + std::string(id) + "' does not exist");
  return it->second;
}

CampusGraph graph_from_json(const nlohmann::json& j) {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  try {
    for (const auto& n : j.at("nodes")) {
      Node node;
      node.id = n.at("id").get<std::string>();
      node.kind = enum_from(n.at("kind").get<std::string>(), kNodeKinds, "node kind");
      node.building = n.at("building").get<std::string>();
      node.floor = n.at("floor").get<int>();
      node.position = {n.at("x").get<double>(), n.at("y").get<double>()};
      node.label = n.value("label", node.id);
      nodes.push_back(std::move(node));
    }
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(), e.at("length").get<double>(),
                       enum_from(e.at("kind").get<std::string>(), kEdgeKinds, "edge kind")});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(GraphErrc::ParseError, e.what());
  }
  return CampusGraph(std::move(nodes), std::move(edges));
}

nlohmann::json to_json(const Node& n) {
  return {{"id", n.id},
          {"kind", std::string(to_string(n.kind))},
          {"building", n.building},
          {"floor", n.floor},
          {"x", n.position.x()},
          {"y", n.position.y()},
          {"label", n.label}};
}

nlohmann::json to_json(const CampusGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [id, n] : g.nodes()) nodes.push_back(to_json(n));
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"length", e.length}, {"kind", std::string(to_string(e.kind))}});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

CampusGraph load_graph(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(GraphErrc::ParseError, "cannot open graph file " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(GraphErrc::ParseError, file.string() + ": " + e.what());
  }
  return graph_from_json(j);
}

// ---------------------------------------------------------------------------
// Routing
// ---------------------------------------------------------------------------

Route shortest_route(const CampusGraph& g, std::string_view from, std::string_view to) {
  g.node(from);
  g.node(to);

  struct Label {
    double dist;
    std::vector<NodeId> path;
  };
  const auto better = [](const Label& x, const Label& y) {
    if (!same_length(x.dist, y.dist)) return x.dist < y.dist;
    return x.path < y.path;
  };

  std::map<NodeId, Label, std::less<>> best;
  std::set<NodeId, std::less<>> settled;
  best.emplace(NodeId(from), Label{0.0, {NodeId(from)}});

  for (;;) {
    const Label* pick = nullptr;
    const NodeId* pick_id = nullptr;
    for (const auto& [id, label] : best) {
      if (settled.count(id)) continue;
      if (!pick || better(label, *pick)) {
        pick = &label;
        pick_id = &id;
      }
    }
    if (!pick) break;
    const NodeId u = *pick_id;
    const Label current = *pick;
    settled.insert(u);
    if (u == to) return {current.path, current.dist};

    for (const auto& nb : g.neighbors(u)) {
      if (settled.count(nb.id)) continue;
      Label cand{current.dist + nb.length, current.path};
      cand.path.push_back(nb.id);
      auto it = best.find(nb.id);
      if (it == best.end()) {
        best.emplace(nb.id, std::move(cand));
      } else if (better(cand, it->second)) {
        it->second = std::move(cand);
      }
    }
  }
  fail(GraphErrc::Unreachable, "no route from '" + std::string(from) + "' to '" + std::string(to) + "'");
}

double bearing_deg(const Eigen::Vector2d& from, const Eigen::Vector2d& to) {
  const Eigen::Vector2d d = to - from;
  double deg = std::atan2(d.x(), d.y()) * 180.0 / std::numbers::pi;
  if (deg < 0) deg += 360.0;
  return deg;
}

double heading_change_deg(double bearing_in, double bearing_out) {
  double delta = std::fmod(bearing_out - bearing_in, 360.0);
  if (delta <= -180.0) delta += 360.0;
  if (delta > 180.0) delta -= 360.0;
  return delta;
}

double path_length(const CampusGraph& g, const std::vector<NodeId>& path) {
  if (path.empty()) fail(GraphErrc::InvalidPath, "empty path");
  double total = 0.0;
  for (const auto& id : path) {
    if (!g.contains(id)) fail(GraphErrc::InvalidPath, "path visits unknown node '" + id + "'");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto* e = g.edge_between(path[i], path[i + 1]);
    if (!e) fail(GraphErrc::InvalidPath, "no edge between '" + path[i] + "' and '" + path[i + 1] + "'");
    total += e->length;
  }
  return total;
}

std::vector<RouteStep> make_instructions(const CampusGraph& g, const std::vector<NodeId>& path) {
  path_length(g, path);  // validates

  const auto& last = g.node(path.back());
  const RouteStep arrive{last.id, Action::Arrive, 0.0, "You have arrived at " + spoken_name(last) + "."};
  if (path.size() == 1) return {arrive};

  std::vector<const Edge*> legs;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) legs.push_back(g.edge_between(path[i], path[i + 1]));

  const auto floor_step = [&](const Node& here, const Node& next, const Edge& e) {
    RouteStep s{here.id, Action::TakeLift, e.length, {}};
    const auto floor = std::to_string(next.floor);
    if (e.kind == EdgeKind::Lift) {
      s.utterance = "At " + spoken_name(here) + ", take the lift to floor " + floor + ".";
    } else if (next.floor > here.floor) {
      s.action = Action::TakeStairsUp;
      s.utterance = "At " + spoken_name(here) + ", take the stairs up to floor " + floor + ".";
    } else {
      s.action = Action::TakeStairsDown;
      s.utterance = "At " + spoken_name(here) + ", take the stairs down to floor " + floor + ".";
    }
    return s;
  };

  std::vector<RouteStep> steps;
  const auto& first = g.node(path[0]);
  if (floor_change(legs[0]->kind)) {
    steps.push_back({first.id, Action::Start, 0.0, "Start at " + spoken_name(first) + "."});
    steps.push_back(floor_step(first, g.node(path[1]), *legs[0]));
  } else {
    steps.push_back({first.id, Action::Start, legs[0]->length,
                     "Start at " + spoken_name(first) + " and walk " + meters(legs[0]->length) + "."});
  }

  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const auto& prev = g.node(path[i - 1]);
    const auto& here = g.node(path[i]);
    const auto& next = g.node(path[i + 1]);
    const Edge& in = *legs[i - 1];
    const Edge& out = *legs[i];
    if (floor_change(out.kind)) {
      steps.push_back(floor_step(here, next, out));
      continue;
    }

    Action action = Action::Continue;
    const Eigen::Vector2d d_in = here.position - prev.position;
    const Eigen::Vector2d d_out = next.position - here.position;
    // Bearings mean nothing across floors or between coincident points.
    if (!floor_change(in.kind) && d_in.norm() > 0.0 && d_out.norm() > 0.0) {
      const double delta =
          heading_change_deg(bearing_deg(prev.position, here.position), bearing_deg(here.position, next.position));
      if (delta >= kTurnThresholdDeg) {
        action = Action::TurnRight;
      } else if (delta <= -kTurnThresholdDeg) {
        action = Action::TurnLeft;
      }
    }
    std::string text = "At " + spoken_name(here) + ", ";
    if (action == Action::Continue) {
      text += "continue straight for " + meters(out.length) + ".";
    } else {
      text += std::string(action == Action::TurnLeft ? "turn left" : "turn right") + " and walk " +
              meters(out.length) + ".";
    }
    steps.push_back({here.id, action, out.length, std::move(text)});
  }
  steps.push_back(arrive);
  return steps;
}

std::vector<NodeId> re_localize(const CampusGraph& g, const std::vector<NodeId>& route, std::string_view scanned) {
  g.node(scanned);
  path_length(g, route);
  const auto it = std::find(route.begin(), route.end(), scanned);
  if (it != route.end()) return {it, route.end()};
  return shortest_route(g, scanned, route.back()).nodes;
}

nlohmann::json to_json(const RouteStep& s) {
  return {{"at_node", s.at_node},
          {"action", std::string(to_string(s.action))},
          {"distance_m", s.distance_m},
          {"utterance", s.utterance}};
}

}  // namespace campus::nav
