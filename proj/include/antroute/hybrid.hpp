#ifndef ANTROUTE_HYBRID_HPP
#define ANTROUTE_HYBRID_HPP

#include <cmath>
#include <optional>
#include <utility>

#include "antroute/aco_engine.hpp"
#include "antroute/graph_astar.hpp"
#include "antroute/road_network.hpp"

namespace antroute {

struct HybridConfig {
  ColonyConfig colony;
  double tau0 = 1.0;
  /// Pheromone added along each A* candidate; unset means 5 * tau0.
  std::optional<double> delta_tau;

  double resolved_delta_tau() const { return delta_tau ? *delta_tau : 5.0 * tau0; }

  void validate() const {
    colony.validate();
    if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw ColonyError("tau0 must be positive");
    const double d = resolved_delta_tau();
    if (!(d >= 1.0) || !std::isfinite(d)) throw ColonyError("delta_tau must be >= 1");
  }
};

/// Adds `delta_tau` to every route of every seed path. A route shared by n paths gains n times.
inline void seed_pheromone(PheromoneMap& tau, const RoadNetwork& net, const SeedPathSet& seeds,
                           double delta_tau) {
  std::vector<std::size_t> hits;
  for (const auto& path : seeds.paths) {
    hits.clear();
    for (std::size_t i = 1; i < path.nodes.size(); ++i) {
      auto r = net.find_route(path.nodes[i - 1], path.nodes[i]);
      if (!r) {
        throw ColonyError("seed path uses missing route " + std::to_string(path.nodes[i - 1]) +
                          "->" + std::to_string(path.nodes[i]));
      }
      hits.push_back(*r);
    }
    for (std::size_t r : hits) tau[r] += delta_tau;
  }
}

struct HybridResult {
  /// Cheaper of the colony's best and the cheapest seed path.
  Direction best;
  /// What the ants alone found, empty if none arrived.
  std::optional<Direction> colony_best;
  std::vector<LoopStats> loops;
  SeedPathSet seeds;
  /// True when `best` is a seed path the colony did not match.
  bool astar_fallback = false;
  int best_loop = 0;
};

/// Initialize, run A*, seed the pheromone along its directions, run the colony.
/// Never returns anything costlier than the cheapest seed path.
inline HybridResult run_hybrid(const RoadNetwork& net, NodeId origin, NodeId dest,
                               const HybridConfig& cfg) {
  cfg.validate();
  auto tau = init_pheromone(net, cfg.tau0);
  auto seeds = generate_seed_paths(net, cfg.colony.importance, origin, dest);
  seed_pheromone(tau, net, seeds, cfg.resolved_delta_tau());
  auto colony = colony_search(net, origin, dest, cfg.colony, std::move(tau));

  HybridResult out;
  out.loops = std::move(colony.loops);
  out.best_loop = colony.best_loop;
  const Direction* cheapest_seed = nullptr;
  for (const auto& s : seeds.paths) {
    if (!cheapest_seed || s.total_cost < cheapest_seed->total_cost) cheapest_seed = &s;
  }
  out.colony_best = colony.best;
  if (colony.best && (!cheapest_seed || colony.best->total_cost <= cheapest_seed->total_cost)) {
    out.best = std::move(*colony.best);
  } else if (cheapest_seed) {
    out.best = *cheapest_seed;
    out.astar_fallback = true;
  } else {
    throw NoDirectionFound();
  }
  out.seeds = std::move(seeds);
  return out;
}

inline HybridResult run_hybrid(const RoadNetwork& net, const ImportanceWeights& w, NodeId origin,
                               NodeId dest, HybridConfig cfg) {
  cfg.colony.importance = w;
  return run_hybrid(net, origin, dest, cfg);
}

}  // namespace antroute

#endif
