#ifndef ANTROUTE_ACO_ENGINE_HPP
#define ANTROUTE_ACO_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "antroute/random.hpp"
#include "antroute/road_network.hpp"

namespace antroute {

/// Added to per-parameter costs before inversion; also the floor for award denominators.
inline constexpr double kCostEpsilon = 1e-6;
/// Lower bound kept on every pheromone value.
inline constexpr double kTauMin = 1e-9;

class ColonyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoDirectionFound : public ColonyError {
 public:
  NoDirectionFound() : ColonyError("no direction found") {}
};

/// Pheromone intensity per directed route, indexed like RoadNetwork::routes().
class PheromoneMap {
 public:
  PheromoneMap() = default;
  PheromoneMap(std::size_t routes, double tau0) : tau_(routes, tau0) {}

  std::size_t size() const noexcept { return tau_.size(); }
  double operator[](std::size_t route) const { return tau_[route]; }
  double& operator[](std::size_t route) { return tau_[route]; }

  double at(const RoadNetwork& net, NodeId from, NodeId to) const {
    auto r = net.find_route(from, to);
    if (!r) throw ColonyError("no route " + std::to_string(from) + "->" + std::to_string(to));
    return tau_[*r];
  }

  std::span<const double> values() const noexcept { return tau_; }
  std::span<double> values() noexcept { return tau_; }

  double min() const { return tau_.empty() ? 0.0 : *std::min_element(tau_.begin(), tau_.end()); }
  double max() const { return tau_.empty() ? 0.0 : *std::max_element(tau_.begin(), tau_.end()); }

  void floor_at(double tau_min) {
    for (auto& t : tau_) t = std::max(t, tau_min);
  }

  bool operator==(const PheromoneMap&) const = default;

 private:
  std::vector<double> tau_;
};

inline PheromoneMap init_pheromone(const RoadNetwork& net, double tau0) {
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw ColonyError("tau0 must be positive");
  return PheromoneMap(net.route_count(), tau0);
}

struct ColonyConfig {
  double alpha = 2.0;
  ImportanceWeights importance;
  /// Threshold on the uniform draw above which the greedy choice is taken.
  double q0 = 0.9;
  /// Punishment factor for below-par ants.
  double pv = 0.9;
  /// Award numerator for above-par ants.
  double av = 950.0;
  /// Per-loop evaporation factor.
  double rho = 0.9;
  int ant_count = 20;
  int loop_count = 100;
  /// Steps per loop before walkers are retired; unset means 2 * node count.
  std::optional<int> iteration_cap;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ColonyError("alpha must be >= 0");
    if (!(q0 >= 0.0 && q0 <= 1.0)) throw ColonyError("q0 must lie in [0, 1]");
    if (!(pv > 0.0 && pv < 1.0)) throw ColonyError("pv must lie in (0, 1)");
    if (!(av > 1.0) || !std::isfinite(av)) throw ColonyError("av must be > 1");
    if (!(rho > 0.0 && rho < 1.0)) throw ColonyError("rho must lie in (0, 1)");
    if (ant_count <= 0) throw ColonyError("ant_count must be positive");
    if (loop_count <= 0) throw ColonyError("loop_count must be positive");
    if (iteration_cap && *iteration_cap <= 0) throw ColonyError("iteration_cap must be positive");
  }

  int resolved_iteration_cap(const RoadNetwork& net) const {
    return iteration_cap ? *iteration_cap : static_cast<int>(2 * net.node_count());
  }
};

/// Parameters of the textbook ant system update, kept apart from ColonyConfig because its
/// deposit constant and the selection threshold share a symbol in the literature.
struct ClassicParams {
  double beta = 1.0;
  double deposit = 100.0;
  double rho_classic = 0.5;

  void validate() const {
    if (!(beta >= 0.0)) throw ColonyError("beta must be >= 0");
    if (!(deposit > 0.0)) throw ColonyError("deposit must be > 0");
    if (!(rho_classic > 0.0 && rho_classic < 1.0)) throw ColonyError("rho must lie in (0, 1)");
  }
};

enum class AntStatus { alive, arrived, blocked };

struct Ant {
  int id = 0;
  std::vector<NodeId> path;
  /// Visited flags by dense node index.
  std::vector<char> tabu;
  double tcost = 0.0;
  AntStatus status = AntStatus::alive;

  static Ant at(const RoadNetwork& net, int id, NodeId origin, std::optional<NodeId> dest = {}) {
    Ant ant;
    ant.id = id;
    ant.path = {origin};
    ant.tabu.assign(net.node_count(), 0);
    ant.tabu[net.index_of(origin)] = 1;
    if (dest && *dest == origin) ant.status = AntStatus::arrived;
    return ant;
  }

  NodeId position() const { return path.back(); }
  bool alive() const noexcept { return status == AntStatus::alive; }
};

/// Route-level quantities a colony needs, computed once per weight profile.
class ColonyModel {
 public:
  ColonyModel(const RoadNetwork& net, std::span<const double> importance) : net_(&net) {
    if (importance.size() != net.parameter_names().size()) {
      throw ColonyError("importance vector does not match network parameters");
    }
    weights_.assign(importance.begin(), importance.end());
    edge_cost_.reserve(net.route_count());
    log_desirability_.reserve(net.route_count());
    for (const auto& r : net.routes()) {
      edge_cost_.push_back(aggregate_route_cost(r, weights_));
      double log_d = 0.0;
      for (std::size_t l = 0; l < weights_.size(); ++l) {
        if (weights_[l] == 0.0) continue;
        log_d -= 2.0 * weights_[l] * std::log(r.costs[l] + kCostEpsilon);
      }
      log_desirability_.push_back(log_d);
    }
  }

  ColonyModel(const RoadNetwork& net, const ImportanceWeights& w)
      : ColonyModel(net, w.aligned(net.parameter_names())) {}

  const RoadNetwork& network() const noexcept { return *net_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double edge_cost(std::size_t route) const { return edge_cost_[route]; }
  /// log of prod_l (1 / (cost_l + eps))^(2 w_l).
  double log_desirability(std::size_t route) const { return log_desirability_[route]; }

 private:
  const RoadNetwork* net_;
  std::vector<double> weights_;
  std::vector<double> edge_cost_;
  std::vector<double> log_desirability_;
};

struct Transition {
  NodeId next = 0;
  std::size_t route = 0;
  double probability = 0.0;
};

/// Feasible moves ordered by next intersection id.
using TransitionTable = std::vector<Transition>;

namespace detail {

inline void normalize_log_weights(TransitionTable& table, std::span<const double> log_w) {
  if (table.empty()) return;
  const double top = *std::max_element(log_w.begin(), log_w.end());
  if (top == -std::numeric_limits<double>::infinity()) {
    for (auto& t : table) t.probability = 1.0 / static_cast<double>(table.size());
    return;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i].probability = std::exp(log_w[i] - top);
    sum += table[i].probability;
  }
  for (auto& t : table) t.probability /= sum;
}

inline double safe_log(double x) {
  return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

inline void require_alive(const Ant& ant) {
  if (!ant.alive()) throw ColonyError("ant " + std::to_string(ant.id) + " is not alive");
}

}  // namespace detail

/// Move probabilities for a live ant: tau^alpha times the inverse-cost desirability of every
/// parameter raised to twice its importance, normalized over unvisited out-neighbours.
/// An empty table means the ant is blocked.
inline TransitionTable transition_probabilities(const Ant& ant, const ColonyModel& model,
                                                const PheromoneMap& tau, double alpha) {
  detail::require_alive(ant);
  const auto& net = model.network();
  TransitionTable table;
  std::vector<double> log_w;
  for (std::size_t r : net.outgoing(ant.position())) {
    const NodeId next = net.routes()[r].to;
    if (ant.tabu[net.index_of(next)]) continue;
    table.push_back({next, r, 0.0});
    log_w.push_back(alpha * detail::safe_log(tau[r]) + model.log_desirability(r));
  }
  detail::normalize_log_weights(table, log_w);
  return table;
}

inline TransitionTable transition_probabilities(const Ant& ant, const RoadNetwork& net,
                                                const PheromoneMap& tau,
                                                const ColonyConfig& cfg) {
  return transition_probabilities(ant, ColonyModel(net, cfg.importance), tau, cfg.alpha);
}

/// Textbook rule: tau^alpha * eta^beta over unvisited out-neighbours; `eta` is per route.
inline TransitionTable classic_transition(const Ant& ant, const RoadNetwork& net,
                                          const PheromoneMap& tau, std::span<const double> eta,
                                          double alpha, double beta) {
  detail::require_alive(ant);
  if (eta.size() != net.route_count()) throw ColonyError("visibility must cover every route");
  TransitionTable table;
  std::vector<double> log_w;
  for (std::size_t r : net.outgoing(ant.position())) {
    const NodeId next = net.routes()[r].to;
    if (ant.tabu[net.index_of(next)]) continue;
    table.push_back({next, r, 0.0});
    const double eta_term = beta == 0.0 ? 0.0 : beta * detail::safe_log(eta[r]);
    const double tau_term = alpha == 0.0 ? 0.0 : alpha * detail::safe_log(tau[r]);
    log_w.push_back(tau_term + eta_term);
  }
  detail::normalize_log_weights(table, log_w);
  return table;
}

/// Greedy pick when `q_draw > q0`, roulette wheel otherwise.
inline const Transition& select_next(const TransitionTable& probs, double q_draw, double q0,
                                     RandomStream& rng) {
  if (probs.empty()) throw ColonyError("cannot select from an empty transition table");
  if (q_draw > q0) {
    const Transition* best = &probs.front();
    for (const auto& t : probs) {
      if (t.probability > best->probability) best = &t;
    }
    return *best;
  }
  const double spin = rng.uniform();
  double cumulative = 0.0;
  for (const auto& t : probs) {
    cumulative += t.probability;
    if (spin < cumulative) return t;
  }
  // Rounding left the wheel a hair short of 1.
  for (auto it = probs.rbegin(); it != probs.rend(); ++it) {
    if (it->probability > 0.0) return *it;
  }
  return probs.back();
}

inline void step_ant(Ant& ant, const ColonyModel& model, const PheromoneMap& tau,
                     const ColonyConfig& cfg, RandomStream& rng, NodeId dest) {
  if (!ant.alive()) return;
  if (ant.position() == dest) {
    ant.status = AntStatus::arrived;
    return;
  }
  const auto table = transition_probabilities(ant, model, tau, cfg.alpha);
  if (table.empty()) {
    ant.status = AntStatus::blocked;
    return;
  }
  const double q = rng.uniform();
  const auto& move = select_next(table, q, cfg.q0, rng);
  const auto& net = model.network();
  ant.path.push_back(move.next);
  ant.tabu[net.index_of(move.next)] = 1;
  ant.tcost += model.edge_cost(move.route);
  if (move.next == dest) ant.status = AntStatus::arrived;
}

struct LoopValuation {
  std::vector<int> awa;
  std::vector<int> pla;
  double avg_tcost = 0.0;
};

/// Splits arrived ants around their mean tcost. Ants at the mean (within rounding of the
/// mean itself) land in the punish list.
inline LoopValuation value_ants(std::span<const Ant> arrived) {
  LoopValuation v;
  if (arrived.empty()) return v;
  double sum = 0.0;
  for (const auto& a : arrived) sum += a.tcost;
  v.avg_tcost = sum / static_cast<double>(arrived.size());
  const double slack = 1e-12 * std::abs(v.avg_tcost);
  for (const auto& a : arrived) {
    if (a.tcost < v.avg_tcost - slack) {
      v.awa.push_back(a.id);
    } else {
      v.pla.push_back(a.id);
    }
  }
  return v;
}

/// Multiplies every route walked by a punished ant by pv, then adds av / edge_cost for every
/// route walked by an awarded ant. One application per ant per route.
inline void reward_punish(PheromoneMap& tau, const LoopValuation& valuation,
                          std::span<const Ant> ants, const ColonyModel& model,
                          const ColonyConfig& cfg) {
  const auto& net = model.network();
  std::map<int, const Ant*> by_id;
  for (const auto& a : ants) by_id[a.id] = &a;
  auto walk = [&](int id, auto&& apply) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ColonyError("valuation names unknown ant " + std::to_string(id));
    const auto& path = it->second->path;
    for (std::size_t i = 1; i < path.size(); ++i) {
      auto r = net.find_route(path[i - 1], path[i]);
      if (!r) throw ColonyError("ant path uses a missing route");
      apply(*r);
    }
  };
  for (int id : valuation.pla) walk(id, [&](std::size_t r) { tau[r] *= cfg.pv; });
  for (int id : valuation.awa) {
    walk(id, [&](std::size_t r) {
      tau[r] += cfg.av / std::max(model.edge_cost(r), kCostEpsilon);
    });
  }
  tau.floor_at(kTauMin);
}

inline void global_evaporate(PheromoneMap& tau, double rho, double tau_min = kTauMin) {
  if (!(rho > 0.0 && rho < 1.0)) throw ColonyError("rho must lie in (0, 1)");
  for (auto& t : tau.values()) t = std::max(t * rho, tau_min);
}

struct ClassicSolution {
  std::vector<NodeId> path;
  double cost = 0.0;
};

/// tau <- (1 - rho) tau + sum_k deposit / f_k over the routes of each solution.
inline void classic_global_update(PheromoneMap& tau, const RoadNetwork& net,
                                  std::span<const ClassicSolution> solutions, double rho_classic,
                                  double deposit) {
  if (!(rho_classic >= 0.0 && rho_classic < 1.0)) throw ColonyError("rho must lie in [0, 1)");
  for (const auto& s : solutions) {
    if (!(s.cost > 0.0)) throw ColonyError("solution cost must be positive");
  }
  std::vector<double> added(tau.size(), 0.0);
  for (const auto& s : solutions) {
    for (std::size_t i = 1; i < s.path.size(); ++i) {
      auto r = net.find_route(s.path[i - 1], s.path[i]);
      if (!r) throw ColonyError("solution path uses a missing route");
      added[*r] += deposit / s.cost;
    }
  }
  for (std::size_t r = 0; r < tau.size(); ++r) {
    tau[r] = std::max((1.0 - rho_classic) * tau[r] + added[r], kTauMin);
  }
}

struct LoopStats {
  int loop_index = 0;
  int arrived_count = 0;
  /// NaN when no ant arrived in the loop.
  double mean_tcost = std::numeric_limits<double>::quiet_NaN();
  double best_tcost = std::numeric_limits<double>::quiet_NaN();
};

struct ColonyResult {
  std::optional<Direction> best;
  /// 1-based loop in which `best` was first reached, 0 if never.
  int best_loop = 0;
  std::vector<LoopStats> loops;
  PheromoneMap final_tau;
};

/// Runs the colony and reports an empty `best` instead of throwing when no ant arrives.
///
/// Ants in one iteration read the same pheromone snapshot and each draw from their own
/// stream, so the outcome does not depend on the order ants are stepped in.
inline ColonyResult colony_search(const RoadNetwork& net, NodeId origin, NodeId dest,
                                  const ColonyConfig& cfg, PheromoneMap tau) {
  cfg.validate();
  net.index_of(origin);
  net.index_of(dest);
  if (tau.size() != net.route_count()) throw ColonyError("pheromone map does not match network");

  const ColonyModel model(net, cfg.importance);
  const int cap = cfg.resolved_iteration_cap(net);

  std::vector<RandomStream> streams;
  streams.reserve(cfg.ant_count);
  for (int k = 0; k < cfg.ant_count; ++k) {
    streams.push_back(RandomStream::derive(cfg.rng_seed, static_cast<std::uint64_t>(k)));
  }

  ColonyResult result;
  result.loops.reserve(cfg.loop_count);
  for (int loop = 1; loop <= cfg.loop_count; ++loop) {
    std::vector<Ant> ants;
    ants.reserve(cfg.ant_count);
    for (int k = 0; k < cfg.ant_count; ++k) ants.push_back(Ant::at(net, k, origin, dest));

    for (int iter = 0; iter < cap; ++iter) {
      bool any_alive = false;
      for (int k = 0; k < cfg.ant_count; ++k) {
        step_ant(ants[k], model, tau, cfg, streams[k], dest);
        any_alive = any_alive || ants[k].alive();
      }
      if (!any_alive) break;
    }
    for (auto& a : ants) {
      if (a.alive()) a.status = AntStatus::blocked;
    }

    std::vector<Ant> arrived;
    for (const auto& a : ants) {
      if (a.status == AntStatus::arrived) arrived.push_back(a);
    }
    LoopStats stats;
    stats.loop_index = loop;
    stats.arrived_count = static_cast<int>(arrived.size());
    if (!arrived.empty()) {
      double sum = 0.0;
      const Ant* loop_best = &arrived.front();
      for (const auto& a : arrived) {
        sum += a.tcost;
        if (a.tcost < loop_best->tcost) loop_best = &a;
      }
      stats.mean_tcost = sum / static_cast<double>(arrived.size());
      stats.best_tcost = loop_best->tcost;
      if (!result.best || loop_best->tcost < result.best->total_cost) {
        result.best = Direction{loop_best->path, loop_best->tcost};
        result.best_loop = loop;
      }
    }
    result.loops.push_back(stats);

    const auto valuation = value_ants(arrived);
    reward_punish(tau, valuation, arrived, model, cfg);
    global_evaporate(tau, cfg.rho);
  }
  result.final_tau = std::move(tau);
  return result;
}

/// Same as colony_search but throws NoDirectionFound when no ant ever arrives.
inline ColonyResult run_colony(const RoadNetwork& net, NodeId origin, NodeId dest,
                               const ColonyConfig& cfg, PheromoneMap tau) {
  auto result = colony_search(net, origin, dest, cfg, std::move(tau));
  if (!result.best) throw NoDirectionFound();
  return result;
}

/// Overload that makes `w` the importance profile of the run.
inline ColonyResult run_colony(const RoadNetwork& net, const ImportanceWeights& w, NodeId origin,
                               NodeId dest, ColonyConfig cfg, PheromoneMap tau) {
  cfg.importance = w;
  return run_colony(net, origin, dest, cfg, std::move(tau));
}

}  // namespace antroute

#endif
