#include "antroute/graph_astar.hpp"

#include <gtest/gtest.h>

#include <random>

#include "antroute/harness.hpp"
#include "support/oracles.hpp"

namespace antroute {
namespace {

TEST(GraphAstar, OriginEqualsDestination) {
  const auto net = parse_map(testing::kLineMap);
  auto d = graph_astar(net, std::vector<double>{1.0}, 2, 2);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->nodes, (std::vector<NodeId>{2}));
  EXPECT_EQ(d->total_cost, 0.0);
}

TEST(GraphAstar, UniqueLinePath) {
  const auto net = parse_map(testing::kLineMap);
  auto d = graph_astar(net, ImportanceWeights({{"cost", 1.0}}), 1, 3);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->nodes, (std::vector<NodeId>{1, 2, 3}));
  EXPECT_DOUBLE_EQ(d->total_cost, 3.0);
}

TEST(GraphAstar, RespectsOneWay) {
  const auto net = parse_map(testing::kLineMap);
  EXPECT_FALSE(graph_astar(net, std::vector<double>{1.0}, 3, 1));
}

TEST(GraphAstarProperty, MatchesDijkstraOnThe27NodeMap) {
  std::ifstream in(testing::data_path("synthetic27.map"));
  const auto net = parse_map(in);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, net.node_count() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = testing::random_weights(rng, net.parameter_names().size());
    const NodeId a = net.intersections()[pick(rng)].id;
    const NodeId b = net.intersections()[pick(rng)].id;
    const double expected = testing::network_dijkstra_cost(net, w, a, b);
    const auto got = graph_astar(net, w, a, b);
    ASSERT_TRUE(got);
    EXPECT_EQ(got->total_cost, expected) << a << "->" << b;
    EXPECT_EQ(direction_cost(got->nodes, net, w), got->total_cost);
    EXPECT_TRUE(is_feasible_simple(got->nodes, net));
  }
}

TEST(GraphAstarProperty, MatchesDijkstraOnRandomNetworks) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = parse_map(testing::random_map_text(rng));
    const auto w = testing::random_weights(rng, net.parameter_names().size());
    const NodeId a = 1;
    const NodeId b = static_cast<NodeId>(net.node_count());
    const double expected = testing::network_dijkstra_cost(net, w, a, b);
    const auto got = graph_astar(net, w, a, b);
    if (expected == testing::kInf) {
      EXPECT_FALSE(got);
      continue;
    }
    ASSERT_TRUE(got);
    EXPECT_EQ(got->total_cost, expected);
  }
}

TEST(HeuristicLowerBound, ZeroCases) {
  std::ifstream in(testing::data_path("synthetic27.map"));
  const auto net = parse_map(in);
  const auto w = experience1_weights();
  EXPECT_EQ(heuristic_lower_bound(net, w, 23, 23), 0.0);
  auto no_distance = w.values();
  no_distance["distance"] = 0.0;
  for (const auto& n : net.intersections()) {
    EXPECT_EQ(heuristic_lower_bound(net, ImportanceWeights(no_distance), n.id, 23), 0.0);
  }
  EXPECT_GT(heuristic_lower_bound(net, w, 24, 23), 0.0);
}

TEST(HeuristicLowerBound, NonGeometricMapFallsBackToZero) {
  const auto net = parse_map(R"(PARAMS distance
NODE 1 0 0
NODE 2 100 0
EDGE 1 2 1 10
)");
  EXPECT_FALSE(net.geometric());
  EXPECT_EQ(heuristic_lower_bound(net, std::vector<double>{1.0}, 1, 2), 0.0);
}

TEST(HeuristicLowerBoundProperty, NeverExceedsRemainingCost) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = parse_map(testing::random_map_text(rng));
    const auto w = testing::random_weights(rng, net.parameter_names().size());
    for (const auto& dest : net.intersections()) {
      const auto field = testing::network_dijkstra(net, w, dest.id, true);
      for (const auto& node : net.intersections()) {
        const double remaining = field[net.index_of(node.id)];
        if (remaining == testing::kInf) continue;
        EXPECT_LE(heuristic_lower_bound(net, w, node.id, dest.id), remaining + 1e-12);
      }
    }
  }
}

TEST(GenerateSeedPaths, AgreementGivesSinglePath) {
  const auto net = parse_map(R"(PARAMS distance risk
NODE 1 0 0
NODE 2 1 0
NODE 3 2 0
NODE 4 1 5
EDGE 1 2 1 1 1
EDGE 2 3 1 1 1
EDGE 1 4 1 6 5
EDGE 4 3 1 6 5
)");
  const auto seeds = generate_seed_paths(net, ImportanceWeights::uniform(net.parameter_names()), 1, 3);
  ASSERT_EQ(seeds.size(), 1u);
  EXPECT_EQ(seeds.paths[0].nodes, (std::vector<NodeId>{1, 2, 3}));
}

TEST(GenerateSeedPaths, ConflictingParametersGiveDistinctOptima) {
  // Short road through traffic vs. longer quiet road.
  const auto net = parse_map(R"(PARAMS distance traffic_load
NODE 1 0 0
NODE 2 100 0
NODE 3 200 0
NODE 4 100 150
EDGE 1 2 0 100 9
EDGE 2 3 0 100 9
EDGE 1 4 0 190 1
EDGE 4 3 0 190 1
)");
  const ImportanceWeights w({{"distance", 1.0}, {"traffic_load", 1.0}});
  const auto seeds = generate_seed_paths(net, w, 1, 3);
  ASSERT_GE(seeds.size(), 2u);
  const auto& names = net.parameter_names();
  for (const auto& name : names) {
    const auto single = ImportanceWeights::single(names, name).aligned(names);
    const double opt = testing::network_dijkstra_cost(net, single, 1, 3);
    bool found = false;
    for (const auto& p : seeds.paths) found = found || direction_cost(p.nodes, net, single) == opt;
    EXPECT_TRUE(found) << name;
  }
  for (std::size_t i = 1; i < seeds.size(); ++i) {
    EXPECT_LT(seeds.paths[i - 1].nodes, seeds.paths[i].nodes);
  }
}

TEST(GenerateSeedPaths, UnreachableGivesEmptySet) {
  const auto net = parse_map(testing::kLineMap);
  EXPECT_TRUE(generate_seed_paths(net, ImportanceWeights({{"cost", 1.0}}), 3, 1).empty());
}

TEST(GenerateSeedPathsProperty, PathsAreFeasibleAndCostsRecomputable) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = parse_map(testing::random_map_text(rng));
    const auto w = testing::named_weights(net, testing::random_weights(rng, 6));
    const NodeId dest = static_cast<NodeId>(net.node_count());
    const auto seeds = generate_seed_paths(net, w, 1, dest);
    for (const auto& p : seeds.paths) {
      EXPECT_TRUE(is_feasible_simple(p.nodes, net));
      EXPECT_EQ(p.nodes.front(), 1);
      EXPECT_EQ(p.nodes.back(), dest);
      const double again = direction_cost(p.nodes, net, w);
      EXPECT_NEAR(again, p.total_cost, 1e-9 * std::max(1.0, again));
    }
  }
}

TEST(GraphAstarProperty, AddingARouteNeverRaisesOptimalCost) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto text = testing::random_map_text(rng, {3, 9, 20, 0.5});
    const auto net = parse_map(text);
    const auto w = testing::random_weights(rng, 6);
    const NodeId dest = static_cast<NodeId>(net.node_count());
    const auto before = graph_astar(net, w, 1, dest);
    // Add one missing directed route with random costs.
    std::string extended = text;
    bool added = false;
    for (NodeId a = 1; a <= dest && !added; ++a) {
      for (NodeId b = 1; b <= dest && !added; ++b) {
        if (a == b || net.find_route(a, b)) continue;
        const double straight = net.straight_line_m(a, b);
        extended += "EDGE " + std::to_string(a) + " " + std::to_string(b) + " 1 " +
                    std::to_string(straight * 1.1 + 1.0) + " 1 2 3 4 5\n";
        added = true;
      }
    }
    if (!added) continue;
    const auto bigger = parse_map(extended);
    // Normalization changes if the new route is the longest; compare on the raw scale.
    if (bigger.max_edge_distance_m() != net.max_edge_distance_m()) continue;
    const auto after = graph_astar(bigger, w, 1, dest);
    if (before) {
      ASSERT_TRUE(after);
      EXPECT_LE(after->total_cost, before->total_cost);
    }
  }
}

TEST(BruteForceBest, AgreesWithAstarOnSmallNetworks) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto net = parse_map(testing::random_map_text(rng, {8, 8, 25, 0.5}));
    const auto w = testing::random_weights(rng, 6);
    const auto oracle = brute_force_best(net, w, 1, 8);
    const auto got = graph_astar(net, w, 1, 8);
    ASSERT_EQ(oracle.has_value(), got.has_value());
    if (oracle) EXPECT_EQ(oracle->total_cost, got->total_cost);
  }
}

}  // namespace
}  // namespace antroute
