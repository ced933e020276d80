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

#include <numeric>
#include <set>

#include "campus/navgraph.hpp"
#include "support/test_support.hpp"

using namespace campus;
using namespace campus::nav;

namespace {

GraphErrc graph_failure(const std::function<void()>& f) {
  try {
    f();
  } catch (const GraphError& e) {
    return e.code();
  }
  FAIL("expected a GraphError");
  return GraphErrc::ParseError;
}

Node node(const std::string& id, double x, double y, int floor = 1, NodeKind kind = NodeKind::Junction) {
  return Node{id, kind, "ENG", floor, Eigen::Vector2d(x, y), "Place " + id};
}

std::vector<Action> actions(const std::vector<RouteStep>& steps) {
  std::vector<Action> out;
  for (const auto& s : steps) out.push_back(s.action);
  return out;
}

CampusGraph fixture() { return load_graph(testing::testdata("campus.json")); }

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("fixture loads") {
    const auto g = fixture();
    CHECK(g.nodes().size() == 6);
    CHECK(g.edges().size() == 6);
    CHECK(g.node("N01").kind == NodeKind::Entrance);
    CHECK(g.node("N07").position == Eigen::Vector2d(20, -6));
    REQUIRE(g.edge_between("N04", "N07") != nullptr);
    CHECK(g.edge_between("N07", "N04")->kind == EdgeKind::Door);
    CHECK(g.edge_between("N01", "N03") == nullptr);
    const auto& nb = g.neighbors("N02");
    REQUIRE(nb.size() == 3);
    CHECK(nb[0].id == "N01");
    CHECK(nb[2].id == "N06");
  }

  TEST_CASE("json round trip") {
    const auto g = fixture();
    const auto again = graph_from_json(to_json(g));
    CHECK(again.nodes().size() == g.nodes().size());
    CHECK(to_json(again) == to_json(g));
  }

  TEST_CASE("invariants") {
    const auto a = node("A", 0, 0);
    const auto b = node("B", 1, 0);
    const auto up = node("U", 1, 0, 2);
    CHECK(graph_failure([&] { CampusGraph({a, b}, {{"A", "C", 1, EdgeKind::Corridor}}); }) == GraphErrc::DanglingEdge);
    CHECK(graph_failure([&] { CampusGraph({a, up}, {{"A", "U", 1, EdgeKind::Corridor}}); }) == GraphErrc::BadEdgeFloors);
    CHECK(graph_failure([&] { CampusGraph({a, b}, {{"A", "B", 1, EdgeKind::Stairs}}); }) == GraphErrc::BadEdgeFloors);
    CHECK(graph_failure([&] { CampusGraph({a, b}, {{"A", "B", 0, EdgeKind::Corridor}}); }) ==
          GraphErrc::NonPositiveLength);
    CHECK(graph_failure([&] { CampusGraph({a, b}, {{"A", "B", std::nan(""), EdgeKind::Corridor}}); }) ==
          GraphErrc::NonPositiveLength);
    CHECK(graph_failure([&] { CampusGraph({a, a}, {}); }) == GraphErrc::DuplicateNode);
    auto far = b;
    far.position.x() = std::numeric_limits<double>::infinity();
    CHECK(graph_failure([&] { CampusGraph({a, far}, {}); }) == GraphErrc::ParseError);
    CHECK(graph_failure([] { graph_from_json(nlohmann::json::parse(R"({"nodes": 1})")); }) == GraphErrc::ParseError);
    CHECK(graph_failure([] { load_graph("/nonexistent.json"); }) == GraphErrc::ParseError);
  }
}

TEST_SUITE("routing") {
  TEST_CASE("degenerate and unreachable") {
    const auto g = fixture();
    const auto r = shortest_route(g, "N03", "N03");
    CHECK(r.nodes == std::vector<NodeId>{"N03"});
    CHECK(r.length == 0.0);

    const CampusGraph split({node("A", 0, 0), node("B", 1, 0), node("C", 5, 5)}, {{"A", "B", 1, EdgeKind::Corridor}});
    CHECK(graph_failure([&] { shortest_route(split, "A", "C"); }) == GraphErrc::Unreachable);
    CHECK(graph_failure([&] { shortest_route(split, "A", "Z"); }) == GraphErrc::UnknownNode);
  }

  TEST_CASE("fixture routes equal the brute-force oracle") {
    const auto g = fixture();
    for (const auto& [from, _] : g.nodes()) {
      for (const auto& [to, __] : g.nodes()) {
        const auto oracle = testing::brute_force_route(g, from, to);
        REQUIRE(oracle.has_value());
        const auto r = shortest_route(g, from, to);
        CHECK(r.nodes == oracle->nodes);
        CHECK(r.length == doctest::Approx(oracle->length));
      }
    }
    CHECK(shortest_route(g, "N01", "N07").nodes == std::vector<NodeId>{"N01", "N04", "N07"});
  }

  TEST_CASE("equal-length ties resolve to the smallest id sequence") {
    // Square: A-B-D and A-C-D both length 2.
    const CampusGraph sq({node("A", 0, 0), node("C", 1, 0), node("B", 0, 1), node("D", 1, 1)},
                         {{"A", "C", 1, EdgeKind::Corridor},
                          {"C", "D", 1, EdgeKind::Corridor},
                          {"A", "B", 1, EdgeKind::Corridor},
                          {"B", "D", 1, EdgeKind::Corridor}});
    CHECK(shortest_route(sq, "A", "D").nodes == std::vector<NodeId>{"A", "B", "D"});
    CHECK(shortest_route(sq, "D", "A").nodes == std::vector<NodeId>{"D", "B", "A"});
  }

  TEST_CASE("parallel edges use the shortest") {
    const CampusGraph g({node("A", 0, 0), node("B", 1, 0)},
                        {{"A", "B", 5, EdgeKind::Corridor}, {"B", "A", 2, EdgeKind::Door}});
    CHECK(shortest_route(g, "A", "B").length == 2.0);
    CHECK(g.edge_between("A", "B")->kind == EdgeKind::Door);
  }

  TEST_CASE("random graphs against the oracle") {
    testing::Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
      const auto g = testing::random_graph(rng, testing::uniform(rng, 2, 8), 0.45);
      for (const auto& [from, _] : g.nodes()) {
        for (const auto& [to, __] : g.nodes()) {
          const auto oracle = testing::brute_force_route(g, from, to);
          if (!oracle) {
            CHECK(graph_failure([&] { shortest_route(g, from, to); }) == GraphErrc::Unreachable);
            continue;
          }
          const auto r = shortest_route(g, from, to);
          CHECK(r.nodes == oracle->nodes);
          CHECK(r.length == doctest::Approx(oracle->length));
          CHECK(std::set<NodeId>(r.nodes.begin(), r.nodes.end()).size() == r.nodes.size());
        }
      }
    }
  }
}

TEST_SUITE("instructions") {
  TEST_CASE("bearing convention") {
    CHECK(bearing_deg({0, 0}, {0, 1}) == doctest::Approx(0));
    CHECK(bearing_deg({0, 0}, {1, 0}) == doctest::Approx(90));
    CHECK(bearing_deg({0, 0}, {0, -1}) == doctest::Approx(180));
    CHECK(heading_change_deg(90, 180) == doctest::Approx(90));
    CHECK(heading_change_deg(0, 270) == doctest::Approx(-90));
    CHECK(heading_change_deg(350, 10) == doctest::Approx(20));
    CHECK(heading_change_deg(0, 180) == doctest::Approx(180));
    CHECK(heading_change_deg(180, 0) == doctest::Approx(180));
  }

  TEST_CASE("straight corridor") {
    const CampusGraph g({node("A", 0, 0), node("B", 10, 0), node("C", 20, 0)},
                        {{"A", "B", 10, EdgeKind::Corridor}, {"B", "C", 10, EdgeKind::Corridor}});
    const auto steps = make_instructions(g, {"A", "B", "C"});
    CHECK(actions(steps) == std::vector<Action>{Action::Start, Action::Continue, Action::Arrive});
    CHECK(steps[0].utterance == "Start at Place A and walk 10 meters.");
    CHECK(steps[1].utterance == "At Place B, continue straight for 10 meters.");
    CHECK(steps[2].utterance == "You have arrived at Place C.");
    CHECK(steps[2].distance_m == 0.0);
  }

  TEST_CASE("east then south turns right") {
    const auto g = fixture();
    const auto steps = make_instructions(g, {"N02", "N03", "N04"});
    CHECK(actions(steps) == std::vector<Action>{Action::Start, Action::TurnRight, Action::Arrive});
    CHECK(steps[1].utterance == "At East hall, turn right and walk 10 meters.");
    const auto back = make_instructions(g, {"N04", "N03", "N02"});
    CHECK(back[1].action == Action::TurnLeft);
  }

  TEST_CASE("turn threshold") {
    // 44 degrees continues, 46 degrees turns.
    const auto at = [](double deg) {
      const double rad = deg * 3.14159265358979323846 / 180.0;
      const CampusGraph g({node("A", 0, -10), node("B", 0, 0), node("C", 10 * std::sin(rad), 10 * std::cos(rad))},
                          {{"A", "B", 10, EdgeKind::Corridor}, {"B", "C", 10, EdgeKind::Corridor}});
      return make_instructions(g, {"A", "B", "C"})[1].action;
    };
    CHECK(at(44) == Action::Continue);
    CHECK(at(-44) == Action::Continue);
    CHECK(at(46) == Action::TurnRight);
    CHECK(at(-46) == Action::TurnLeft);
    CHECK(at(135) == Action::TurnRight);
  }

  TEST_CASE("floor changes") {
    const auto g = load_graph(testing::testdata("multifloor.json"));
    const auto up = make_instructions(g, shortest_route(g, "A", "D").nodes);
    CHECK(actions(up) == std::vector<Action>{Action::Start, Action::TurnLeft, Action::TakeStairsUp, Action::Continue,
                                             Action::TurnLeft, Action::Arrive});
    CHECK(up[2].utterance == "At Stairs ground, take the stairs up to floor 2.");
    CHECK(up[3].utterance == "At Stairs first, continue straight for 10 meters.");

    const auto down = make_instructions(g, {"S2", "S1", "B"});
    CHECK(actions(down) == std::vector<Action>{Action::Start, Action::TakeStairsDown, Action::Continue, Action::Arrive});
    CHECK(down[0].distance_m == 0.0);
    CHECK(down[0].utterance == "Start at Stairs first.");
    CHECK(down[1].utterance == "At Stairs first, take the stairs down to floor 1.");

    const auto lift = make_instructions(g, shortest_route(g, "A", "E").nodes);
    CHECK(std::count(lift.begin(), lift.end(), RouteStep{"L1", Action::TakeLift, 4, "At Lift ground, take the lift to floor 3."}) == 1);
  }

  TEST_CASE("single node and invalid paths") {
    const auto g = fixture();
    const auto one = make_instructions(g, {"N07"});
    REQUIRE(one.size() == 1);
    CHECK(one[0].action == Action::Arrive);
    CHECK(graph_failure([&] { make_instructions(g, {}); }) == GraphErrc::InvalidPath);
    CHECK(graph_failure([&] { make_instructions(g, {"N01", "N03"}); }) == GraphErrc::InvalidPath);
    CHECK(graph_failure([&] { make_instructions(g, {"N01", "N99"}); }) == GraphErrc::InvalidPath);
  }

  TEST_CASE("unit wording") {
    const CampusGraph g({node("A", 0, 0), node("B", 0, 1.2)}, {{"A", "B", 1.2, EdgeKind::Corridor}});
    CHECK(make_instructions(g, {"A", "B"})[0].utterance == "Start at Place A and walk 1 meter.");
  }

  TEST_CASE("distances sum to the route length and output is deterministic") {
    testing::Rng rng(123);
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = testing::random_graph(rng, 8, 0.5);
      const auto& ids = g.nodes();
      const auto from = std::next(ids.begin(), testing::uniform(rng, 0, 7))->first;
      const auto to = std::next(ids.begin(), testing::uniform(rng, 0, 7))->first;
      if (!testing::brute_force_route(g, from, to)) continue;
      const auto r = shortest_route(g, from, to);
      const auto steps = make_instructions(g, r.nodes);
      const double sum = std::accumulate(steps.begin(), steps.end(), 0.0,
                                         [](double acc, const RouteStep& s) { return acc + s.distance_m; });
      CHECK(std::abs(sum - r.length) <= 0.5);
      CHECK(steps.back().action == Action::Arrive);
      if (r.nodes.size() > 1) CHECK(steps.front().action == Action::Start);
      CHECK(make_instructions(g, shortest_route(g, from, to).nodes) == steps);
    }
  }
}

TEST_SUITE("re_localize") {
  TEST_CASE("on-route scans give suffixes") {
    const auto g = fixture();
    const std::vector<NodeId> route{"N01", "N04", "N07"};
    CHECK(re_localize(g, route, "N01") == route);
    CHECK(re_localize(g, route, "N04") == std::vector<NodeId>{"N04", "N07"});
    CHECK(re_localize(g, route, "N07") == std::vector<NodeId>{"N07"});
    const auto once = re_localize(g, route, "N04");
    CHECK(re_localize(g, once, "N04") == once);
  }

  TEST_CASE("off-route scan reroutes to the destination") {
    const auto g = fixture();
    const std::vector<NodeId> route{"N01", "N04", "N07"};
    for (const auto* scanned : {"N02", "N03", "N06"}) {
      const auto oracle = testing::brute_force_route(g, scanned, "N07");
      REQUIRE(oracle.has_value());
      CHECK(re_localize(g, route, scanned) == oracle->nodes);
    }
    // N02 -> N07 has two 36 m routes; the smaller id sequence wins.
    CHECK(re_localize(g, route, "N02") == std::vector<NodeId>{"N02", "N01", "N04", "N07"});
  }

  TEST_CASE("errors") {
    const auto g = fixture();
    CHECK(graph_failure([&] { re_localize(g, {"N01", "N04"}, "N99"); }) == GraphErrc::UnknownNode);
    CHECK(graph_failure([&] { re_localize(g, {}, "N01"); }) == GraphErrc::InvalidPath);
  }
}
