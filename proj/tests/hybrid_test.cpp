#include "antroute/hybrid.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "antroute/harness.hpp"
#include "support/oracles.hpp"

namespace antroute {
namespace {

/// 1 -> 2 -> 4 and 1 -> 3 -> 4 share nothing; 4 -> 5 is shared by both.
constexpr const char* kDiamond = R"(PARAMS cost
NODE 1 0 0
NODE 2 1 1
NODE 3 1 -1
NODE 4 2 0
NODE 5 3 0
EDGE 1 2 1 1
EDGE 2 4 1 1
EDGE 1 3 1 1
EDGE 3 4 1 1
EDGE 4 5 1 1
)";

RoadNetwork bundled_map() {
  std::ifstream in(testing::data_path("synthetic27.map"));
  return parse_map(in);
}

TEST(SeedPheromone, AddsDeltaOncePerPath) {
  const auto net = parse_map(kDiamond);
  auto tau = init_pheromone(net, 1.0);
  SeedPathSet seeds;
  seeds.paths.push_back({{1, 2, 4, 5}, 3.0});
  seeds.paths.push_back({{1, 3, 4, 5}, 3.0});
  seed_pheromone(tau, net, seeds, 1.0);
  EXPECT_DOUBLE_EQ(tau.at(net, 1, 2), 2.0);
  EXPECT_DOUBLE_EQ(tau.at(net, 1, 3), 2.0);
  EXPECT_DOUBLE_EQ(tau.at(net, 4, 5), 3.0);
}

TEST(SeedPheromone, UntouchedRoutesUnchanged) {
  const auto net = parse_map(kDiamond);
  auto tau = init_pheromone(net, 1.0);
  SeedPathSet seeds;
  seeds.paths.push_back({{1, 2, 4}, 2.0});
  seed_pheromone(tau, net, seeds, 1.0);
  EXPECT_DOUBLE_EQ(tau.at(net, 1, 2), 2.0);
  EXPECT_DOUBLE_EQ(tau.at(net, 2, 4), 2.0);
  EXPECT_EQ(tau.at(net, 1, 3), 1.0);
  EXPECT_EQ(tau.at(net, 3, 4), 1.0);
  EXPECT_EQ(tau.at(net, 4, 5), 1.0);
}

TEST(SeedPheromone, RejectsInfeasibleSeed) {
  const auto net = parse_map(kDiamond);
  auto tau = init_pheromone(net, 1.0);
  SeedPathSet seeds;
  seeds.paths.push_back({{1, 4}, 1.0});
  EXPECT_THROW(seed_pheromone(tau, net, seeds, 1.0), ColonyError);
}

TEST(SeedPheromoneProperty, PreservesSupportAndOnlyRaisesSeedRoutes) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = parse_map(testing::random_map_text(rng));
    const auto w = testing::named_weights(net, testing::random_weights(rng, 6));
    const NodeId dest = static_cast<NodeId>(net.node_count());
    const auto seeds = generate_seed_paths(net, w, 1, dest);
    const auto before = init_pheromone(net, 1.0);
    auto after = before;
    seed_pheromone(after, net, seeds, 5.0);
    ASSERT_EQ(after.size(), before.size());
    std::vector<char> on_seed(net.route_count(), 0);
    for (const auto& p : seeds.paths) {
      for (std::size_t i = 1; i < p.nodes.size(); ++i) {
        on_seed[*net.find_route(p.nodes[i - 1], p.nodes[i])] = 1;
      }
    }
    for (std::size_t r = 0; r < net.route_count(); ++r) {
      EXPECT_GE(after[r], before[r]);
      if (on_seed[r]) {
        EXPECT_GT(after[r], before[r]);
      } else {
        EXPECT_EQ(after[r], before[r]);
      }
    }
  }
}

TEST(SeedPheromone, SeededSiblingIsStrictlyPreferred) {
  const auto net = parse_map(kDiamond);
  auto tau = init_pheromone(net, 1.0);
  SeedPathSet seeds;
  seeds.paths.push_back({{1, 2, 4, 5}, 3.0});
  seed_pheromone(tau, net, seeds, 1.0);
  ColonyConfig cfg;
  cfg.importance = ImportanceWeights({{"cost", 1.0}});
  const auto t = transition_probabilities(Ant::at(net, 0, 1), net, tau, cfg);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].next, 2);
  EXPECT_GT(t[0].probability, t[1].probability);
}

TEST(HybridConfigTest, DeltaTauMustBeAtLeastOne) {
  HybridConfig cfg;
  cfg.colony.importance = ImportanceWeights({{"cost", 1.0}});
  EXPECT_DOUBLE_EQ(cfg.resolved_delta_tau(), 5.0);
  cfg.delta_tau = 0.5;
  EXPECT_THROW(cfg.validate(), ColonyError);
  cfg.delta_tau = 1.0;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(RunHybrid, UniquePathNetwork) {
  const auto net = parse_map(testing::kLineMap);
  HybridConfig cfg;
  const auto r = run_hybrid(net, ImportanceWeights({{"cost", 1.0}}), 1, 3, cfg);
  EXPECT_EQ(r.best.nodes, (std::vector<NodeId>{1, 2, 3}));
  ASSERT_EQ(r.seeds.size(), 1u);
  EXPECT_EQ(r.seeds.paths[0].nodes, r.best.nodes);
  EXPECT_FALSE(r.astar_fallback);
}

TEST(RunHybrid, UnreachableThrows) {
  const auto net = parse_map(testing::kLineMap);
  EXPECT_THROW(run_hybrid(net, ImportanceWeights({{"cost", 1.0}}), 3, 1, HybridConfig{}),
               NoDirectionFound);
}

TEST(RunHybrid, FallsBackToSeedWhenAntsCannotArrive) {
  // Ants are capped at one step, so none of them reaches 3.
  const auto net = parse_map(testing::kLineMap);
  HybridConfig cfg;
  cfg.colony.iteration_cap = 1;
  cfg.colony.loop_count = 3;
  const auto r = run_hybrid(net, ImportanceWeights({{"cost", 1.0}}), 1, 3, cfg);
  EXPECT_TRUE(r.astar_fallback);
  EXPECT_FALSE(r.colony_best);
  EXPECT_EQ(r.best.nodes, (std::vector<NodeId>{1, 2, 3}));
}

TEST(RunHybrid, EmptySeedSetMatchesPlainColony) {
  // 3 -> 1 has no direction, so A* yields no seeds and seeding must be a no-op.
  const auto net = parse_map(testing::kLineMap);
  HybridConfig cfg;
  cfg.colony.importance = ImportanceWeights({{"cost", 1.0}});
  cfg.colony.loop_count = 5;
  auto tau = init_pheromone(net, cfg.tau0);
  const auto seeds = generate_seed_paths(net, cfg.colony.importance, 3, 1);
  ASSERT_TRUE(seeds.empty());
  seed_pheromone(tau, net, seeds, cfg.resolved_delta_tau());
  EXPECT_EQ(tau, init_pheromone(net, cfg.tau0));

  const auto plain = colony_search(net, 3, 1, cfg.colony, init_pheromone(net, cfg.tau0));
  const auto seeded = colony_search(net, 3, 1, cfg.colony, tau);
  EXPECT_EQ(plain.final_tau, seeded.final_tau);
  EXPECT_EQ(plain.best.has_value(), seeded.best.has_value());
}

TEST(RunHybrid, EmptySeedsOnRealRunIsObservationallyPlain) {
  // Same colony with and without a no-op seeding step on the bundled map.
  const auto net = bundled_map();
  ColonyConfig cfg;
  cfg.importance = experience1_weights();
  cfg.loop_count = 20;
  cfg.rng_seed = 3;
  auto tau = init_pheromone(net, 1.0);
  seed_pheromone(tau, net, SeedPathSet{}, 5.0);
  const auto a = run_colony(net, 24, 23, cfg, tau);
  const auto b = run_colony(net, 24, 23, cfg, init_pheromone(net, 1.0));
  EXPECT_EQ(*a.best, *b.best);
  EXPECT_EQ(a.final_tau, b.final_tau);
}

TEST(RunHybrid, NeverWorseThanCheapestSeed) {
  const auto net = bundled_map();
  for (const auto& w : {experience1_weights(), experience2_weights()}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      HybridConfig cfg;
      cfg.colony.rng_seed = seed;
      cfg.colony.loop_count = 10;
      const auto r = run_hybrid(net, w, 24, 23, cfg);
      ASSERT_FALSE(r.seeds.empty());
      for (const auto& s : r.seeds.paths) EXPECT_LE(r.best.total_cost, s.total_cost);
      EXPECT_TRUE(is_feasible_simple(r.best.nodes, net));
      const double again = direction_cost(r.best.nodes, net, w);
      EXPECT_NEAR(again, r.best.total_cost, 1e-9 * again);
    }
  }
}

TEST(RunHybrid, MeanBestNoWorseThanAntsOnThreePathFixture) {
  const auto net = parse_map(testing::kThreePathMap);
  const ImportanceWeights w({{"cost", 1.0}});
  double hybrid_sum = 0.0;
  double ants_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    HybridConfig cfg;
    cfg.colony.rng_seed = seed;
    const auto h = run_hybrid(net, w, 1, 5, cfg);
    ASSERT_TRUE(h.colony_best);
    hybrid_sum += h.colony_best->total_cost;
    auto ccfg = cfg.colony;
    ccfg.importance = w;
    ants_sum += run_colony(net, 1, 5, ccfg, init_pheromone(net, 1.0)).best->total_cost;
  }
  EXPECT_LE(hybrid_sum / 50.0, ants_sum / 50.0);
}

}  // namespace
}  // namespace antroute
