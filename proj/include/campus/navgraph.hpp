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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "campus/error.hpp"

namespace campus::nav {

using NodeId = std::string;

enum class NodeKind { Entrance, Junction, Desk, Stairs, Lift };
enum class EdgeKind { Corridor, Door, Stairs, Lift };

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::Junction;
  std::string building;
  int floor = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // meters, +x east, +y north
  std::string label;
};

/// Always walkable in both directions.
struct Edge {
  NodeId a;
  NodeId b;
  double length = 0.0;  // meters
  EdgeKind kind = EdgeKind::Corridor;
};

enum class GraphErrc {
  ParseError,
  DuplicateNode,
  DanglingEdge,
  BadEdgeFloors,
  NonPositiveLength,
  UnknownNode,
  Unreachable,
  InvalidPath,
};

std::string_view to_string(GraphErrc code);
using GraphError = CodedError<GraphErrc>;

/// Validated walk graph, immutable after construction.
class CampusGraph {
 public:
  /// Throws GraphError (DuplicateNode, DanglingEdge, BadEdgeFloors,
  /// NonPositiveLength, ParseError for non-finite coordinates).
  CampusGraph(std::vector<Node> nodes, std::vector<Edge> edges);

  const std::map<NodeId, Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool contains(std::string_view id) const;
  /// Throws GraphError(UnknownNode).
  const Node& node(std::string_view id) const;

  /// Shortest edge joining a and b, if any.
  const Edge* edge_between(std::string_view a, std::string_view b) const;

  struct Neighbor {
    NodeId id;
    double length;
  };
  /// Neighbors of `id` sorted by id, one entry per neighbor (shortest edge).
  const std::vector<Neighbor>& neighbors(std::string_view id) const;

 private:
  std::map<NodeId, Node> nodes_;
  std::vector<Edge> edges_;
  std::map<NodeId, std::vector<Neighbor>, std::less<>> adjacency_;
  std::map<std::pair<NodeId, NodeId>, std::size_t> best_edge_;  // key ordered (min, max)
};

CampusGraph graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CampusGraph& g);
/// Throws GraphError(ParseError) for unreadable files or malformed JSON.
CampusGraph load_graph(const std::filesystem::path& file);

std::string_view to_string(NodeKind k);
std::string_view to_string(EdgeKind k);

// ---------------------------------------------------------------------------
// Routing
// ---------------------------------------------------------------------------

struct Route {
  std::vector<NodeId> nodes;
  double length = 0.0;
};

/// Ties closer than this (relative) count as equal lengths.
inline constexpr double kLengthTieTolerance = 1e-9;

/// Dijkstra over edge lengths. Among equal-length routes the
/// lexicographically smallest node-id sequence wins. Throws
/// GraphError(UnknownNode) or GraphError(Unreachable).
Route shortest_route(const CampusGraph& g, std::string_view from, std::string_view to);

enum class Action { Start, Continue, TurnLeft, TurnRight, TakeStairsUp, TakeStairsDown, TakeLift, Arrive };

std::string_view to_string(Action a);

struct RouteStep {
  NodeId at_node;
  Action action = Action::Start;
  double distance_m = 0.0;  // to the next step; 0 for Arrive
  std::string utterance;
  friend bool operator==(const RouteStep&, const RouteStep&) = default;
};

inline constexpr double kTurnThresholdDeg = 45.0;

/// Compass bearing in degrees, clockwise from north (+y), in [0, 360).
double bearing_deg(const Eigen::Vector2d& from, const Eigen::Vector2d& to);
/// Signed heading change in (-180, 180]; positive turns clockwise.
double heading_change_deg(double bearing_in, double bearing_out);

/// Turn-by-turn steps for a path. Starts with Start and ends with Arrive;
/// a one-node path yields a single Arrive step. Throws
/// GraphError(InvalidPath).
std::vector<RouteStep> make_instructions(const CampusGraph& g, const std::vector<NodeId>& path);

/// Route from a freshly scanned node to the same destination: the suffix of
/// `route` when the node is on it, otherwise a new shortest route.
std::vector<NodeId> re_localize(const CampusGraph& g, const std::vector<NodeId>& route, std::string_view scanned);

/// Sum of edge lengths along `path`. Throws GraphError(InvalidPath).
double path_length(const CampusGraph& g, const std::vector<NodeId>& path);

nlohmann::json to_json(const RouteStep& s);
nlohmann::json to_json(const Node& n);

}  // namespace campus::nav
