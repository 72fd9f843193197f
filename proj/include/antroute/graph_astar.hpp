#ifndef ANTROUTE_GRAPH_ASTAR_HPP
#define ANTROUTE_GRAPH_ASTAR_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "antroute/road_network.hpp"

namespace antroute {

/// Candidate directions found by A*. Sorted by node sequence, no duplicates.
struct SeedPathSet {
  std::vector<Direction> paths;

  std::size_t size() const noexcept { return paths.size(); }
  bool empty() const noexcept { return paths.empty(); }
};

/// Admissible estimate of the remaining aggregate cost from `node` to `dest`.
///
/// Only the distance parameter has a geometric lower bound; it is scaled the same way route
/// distances are. Falls back to 0 when some route is shorter than its straight line.
inline double heuristic_lower_bound(const RoadNetwork& net, std::span<const double> weights,
                                    NodeId node, NodeId dest) {
  const auto dist = net.distance_index();
  if (!dist || !net.geometric() || node == dest) return 0.0;
  const double w = weights[*dist];
  if (w <= 0.0) return 0.0;
  return w * net.normalize_distance(net.straight_line_m(node, dest));
}

inline double heuristic_lower_bound(const RoadNetwork& net, const ImportanceWeights& w,
                                    NodeId node, NodeId dest) {
  const auto aligned = w.aligned(net.parameter_names());
  return heuristic_lower_bound(net, aligned, node, dest);
}

/// Minimum aggregate-cost direction from `origin` to `dest`, or nullopt if none exists.
///
/// Equal-f frontier entries pop by smaller node id. Closed nodes are reopened when a cheaper
/// g turns up, so the result stays optimal under floating-point rounding of the heuristic.
inline std::optional<Direction> graph_astar(const RoadNetwork& net,
                                            std::span<const double> weights, NodeId origin,
                                            NodeId dest) {
  const std::size_t start = net.index_of(origin);
  const std::size_t goal = net.index_of(dest);
  const auto costs = route_costs(net, weights);
  const auto& nodes = net.intersections();

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> g(net.node_count(), kInf);
  std::vector<double> h(net.node_count(), -1.0);
  std::vector<std::size_t> parent(net.node_count(), net.node_count());

  struct Entry {
    double f;
    NodeId id;
    std::size_t index;
    double g;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    return a.id > b.id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

  auto heuristic = [&](std::size_t i) {
    if (h[i] < 0.0) h[i] = heuristic_lower_bound(net, weights, nodes[i].id, dest);
    return h[i];
  };

  g[start] = 0.0;
  open.push({heuristic(start), origin, start, 0.0});
  while (!open.empty()) {
    const auto top = open.top();
    open.pop();
    if (top.g != g[top.index]) continue;
    if (top.index == goal) break;
    for (std::size_t r : net.outgoing(top.id)) {
      const auto& route = net.routes()[r];
      const std::size_t next = net.index_of(route.to);
      const double cand = top.g + costs[r];
      if (cand < g[next]) {
        g[next] = cand;
        parent[next] = top.index;
        open.push({cand + heuristic(next), route.to, next, cand});
      }
    }
  }
  if (g[goal] == kInf) return std::nullopt;

  Direction out;
  for (std::size_t i = goal; i != net.node_count(); i = parent[i]) {
    out.nodes.push_back(nodes[i].id);
    if (i == start) break;
  }
  std::reverse(out.nodes.begin(), out.nodes.end());
  out.total_cost = g[goal];
  return out;
}

inline std::optional<Direction> graph_astar(const RoadNetwork& net, const ImportanceWeights& w,
                                            NodeId origin, NodeId dest) {
  const auto aligned = w.aligned(net.parameter_names());
  return graph_astar(net, aligned, origin, dest);
}

/// Runs A* under the full profile and under each single-parameter profile, keeping the
/// distinct directions. Costs of the kept directions are evaluated under the full profile.
inline SeedPathSet generate_seed_paths(const RoadNetwork& net, const ImportanceWeights& w,
                                       NodeId origin, NodeId dest) {
  const auto& names = net.parameter_names();
  const auto full = w.aligned(names);

  std::vector<std::vector<double>> profiles{full};
  for (std::size_t l = 0; l < names.size(); ++l) {
    std::vector<double> single(names.size(), 0.0);
    single[l] = 1.0;
    profiles.push_back(std::move(single));
  }

  SeedPathSet seeds;
  for (const auto& profile : profiles) {
    auto found = graph_astar(net, profile, origin, dest);
    if (!found) continue;
    found->total_cost = direction_cost(found->nodes, net, full);
    seeds.paths.push_back(std::move(*found));
  }
  std::sort(seeds.paths.begin(), seeds.paths.end(),
            [](const Direction& a, const Direction& b) { return a.nodes < b.nodes; });
  seeds.paths.erase(std::unique(seeds.paths.begin(), seeds.paths.end(),
                                [](const Direction& a, const Direction& b) {
                                  return a.nodes == b.nodes;
                                }),
                    seeds.paths.end());
  return seeds;
}

}  // namespace antroute

#endif
