#ifndef ANTROUTE_HARNESS_HPP
#define ANTROUTE_HARNESS_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "antroute/aco_engine.hpp"
#include "antroute/graph_astar.hpp"
#include "antroute/hybrid.hpp"
#include "antroute/road_network.hpp"

namespace antroute {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int invalid_input = 2;
inline constexpr int unreachable = 3;
}  // namespace exit_code

enum class Algorithm { astar, ants, hybrid };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::astar: return "astar";
    case Algorithm::ants: return "ants";
    case Algorithm::hybrid: return "hybrid";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "astar") return Algorithm::astar;
  if (s == "ants") return Algorithm::ants;
  if (s == "hybrid") return Algorithm::hybrid;
  return std::nullopt;
}

/// Optional tuning that replaces the defaults of ColonyConfig / HybridConfig.
struct ConfigOverrides {
  std::optional<int> loops;
  std::optional<int> ants;
  std::optional<double> alpha;
  std::optional<double> q0;
  std::optional<double> pv;
  std::optional<double> av;
  std::optional<double> rho;
  std::optional<double> tau0;
  std::optional<double> delta_tau;
  std::optional<int> iteration_cap;
};

struct ExperimentSpec {
  std::string map_path;
  NodeId origin = 0;
  NodeId dest = 0;
  ImportanceWeights weights;
  Algorithm algorithm = Algorithm::hybrid;
  int repeats = 1;
  std::uint64_t rng_seed = 0;
  ConfigOverrides overrides;
  /// Run metadata only.
  double velocity_kmh = 40.0;
  std::string start_time = "18:00";
};

struct ReportRow {
  int loop = 0;
  Algorithm algorithm = Algorithm::ants;
  double mean_tcost = std::numeric_limits<double>::quiet_NaN();
  double best_tcost = std::numeric_limits<double>::quiet_NaN();
  double arrived = 0.0;
};

struct AlgorithmOutcome {
  Algorithm algorithm = Algorithm::ants;
  /// Cheapest direction over all repeats (first repeat wins ties).
  Direction best;
  /// Cost of the direction each repeat returned.
  std::vector<double> final_costs;
  /// Cost the ants alone reached in each repeat; NaN when none arrived. Equals
  /// final_costs for non-hybrid runs.
  std::vector<double> colony_final_costs;
  int fallback_count = 0;

  double mean_final_cost() const {
    double s = 0.0;
    for (double c : final_costs) s += c;
    return final_costs.empty() ? 0.0 : s / static_cast<double>(final_costs.size());
  }
};

struct ComparisonReport {
  std::vector<ReportRow> rows;
  std::vector<AlgorithmOutcome> outcomes;

  /// Appends another algorithm's rows and outcome (for side-by-side CSVs).
  void append(const ComparisonReport& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    outcomes.insert(outcomes.end(), other.outcomes.begin(), other.outcomes.end());
  }
};

inline ColonyConfig colony_config_for(const ExperimentSpec& spec, std::uint64_t seed) {
  ColonyConfig cfg;
  cfg.importance = spec.weights;
  cfg.rng_seed = seed;
  const auto& o = spec.overrides;
  if (o.loops) cfg.loop_count = *o.loops;
  if (o.ants) cfg.ant_count = *o.ants;
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.q0) cfg.q0 = *o.q0;
  if (o.pv) cfg.pv = *o.pv;
  if (o.av) cfg.av = *o.av;
  if (o.rho) cfg.rho = *o.rho;
  if (o.iteration_cap) cfg.iteration_cap = *o.iteration_cap;
  return cfg;
}

inline HybridConfig hybrid_config_for(const ExperimentSpec& spec, std::uint64_t seed) {
  HybridConfig cfg;
  cfg.colony = colony_config_for(spec, seed);
  if (spec.overrides.tau0) cfg.tau0 = *spec.overrides.tau0;
  if (spec.overrides.delta_tau) cfg.delta_tau = *spec.overrides.delta_tau;
  return cfg;
}

namespace detail {

/// Running per-loop means that skip NaN entries.
struct LoopAccumulator {
  double mean_sum = 0.0;
  int mean_n = 0;
  double best_sum = 0.0;
  int best_n = 0;
  double arrived_sum = 0.0;

  void add(const LoopStats& s) {
    if (!std::isnan(s.mean_tcost)) {
      mean_sum += s.mean_tcost;
      ++mean_n;
    }
    if (!std::isnan(s.best_tcost)) {
      best_sum += s.best_tcost;
      ++best_n;
    }
    arrived_sum += s.arrived_count;
  }
};

}  // namespace detail

/// Runs `spec` against an already loaded network. Repeat r uses seed rng_seed + r.
/// Throws NoDirectionFound when the destination cannot be reached.
inline ComparisonReport run_experiment(const ExperimentSpec& spec, const RoadNetwork& net) {
  if (spec.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  net.index_of(spec.origin);
  net.index_of(spec.dest);
  const auto weights = spec.weights.aligned_exact(net.parameter_names());

  ComparisonReport report;
  AlgorithmOutcome outcome;
  outcome.algorithm = spec.algorithm;

  if (spec.algorithm == Algorithm::astar) {
    auto found = graph_astar(net, weights, spec.origin, spec.dest);
    if (!found) throw NoDirectionFound();
    outcome.best = *found;
    outcome.final_costs.assign(1, found->total_cost);
    outcome.colony_final_costs = outcome.final_costs;
    report.rows.push_back({1, Algorithm::astar, found->total_cost, found->total_cost, 1.0});
    report.outcomes.push_back(std::move(outcome));
    return report;
  }

  std::vector<detail::LoopAccumulator> acc;
  bool have_best = false;
  for (int r = 0; r < spec.repeats; ++r) {
    const std::uint64_t seed = spec.rng_seed + static_cast<std::uint64_t>(r);
    std::vector<LoopStats> loops;
    Direction best;
    double colony_cost = std::numeric_limits<double>::quiet_NaN();
    if (spec.algorithm == Algorithm::ants) {
      const auto cfg = colony_config_for(spec, seed);
      auto result = run_colony(net, spec.origin, spec.dest, cfg, init_pheromone(net, 1.0));
      loops = std::move(result.loops);
      best = std::move(*result.best);
      colony_cost = best.total_cost;
    } else {
      auto result = run_hybrid(net, spec.origin, spec.dest, hybrid_config_for(spec, seed));
      loops = std::move(result.loops);
      best = std::move(result.best);
      if (result.colony_best) colony_cost = result.colony_best->total_cost;
      if (result.astar_fallback) ++outcome.fallback_count;
    }
    if (acc.size() < loops.size()) acc.resize(loops.size());
    for (std::size_t i = 0; i < loops.size(); ++i) acc[i].add(loops[i]);
    outcome.final_costs.push_back(best.total_cost);
    outcome.colony_final_costs.push_back(colony_cost);
    if (!have_best || best.total_cost < outcome.best.total_cost) {
      outcome.best = std::move(best);
      have_best = true;
    }
  }

  const double n = static_cast<double>(spec.repeats);
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const auto& a = acc[i];
    ReportRow row;
    row.loop = static_cast<int>(i) + 1;
    row.algorithm = spec.algorithm;
    row.mean_tcost = a.mean_n ? a.mean_sum / a.mean_n : kNaN;
    row.best_tcost = a.best_n ? a.best_sum / a.best_n : kNaN;
    row.arrived = a.arrived_sum / n;
    report.rows.push_back(row);
  }
  report.outcomes.push_back(std::move(outcome));
  return report;
}

inline RoadNetwork load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NetworkError("cannot open map file '" + path + "'");
  return parse_map(in);
}

inline ComparisonReport run_experiment(const ExperimentSpec& spec) {
  return run_experiment(spec, load_map(spec.map_path));
}

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search over simple directed paths. Ties go to the lexicographically smallest
/// node sequence. Intended as a reference for small networks only.
inline std::optional<Direction> brute_force_best(const RoadNetwork& net,
                                                 std::span<const double> weights, NodeId origin,
                                                 NodeId dest, std::size_t max_nodes = 12) {
  if (net.node_count() > max_nodes) {
    throw EnumerationTooLarge("network has " + std::to_string(net.node_count()) +
                              " intersections, enumeration limit is " + std::to_string(max_nodes));
  }
  net.index_of(origin);
  net.index_of(dest);
  const auto costs = route_costs(net, weights);

  std::optional<Direction> best;
  std::vector<NodeId> path{origin};
  std::vector<char> on_path(net.node_count(), 0);
  on_path[net.index_of(origin)] = 1;

  // Neighbours are visited in id order, so paths are produced lexicographically and the
  // first of equal-cost paths is kept.
  std::function<void(NodeId, double)> dfs = [&](NodeId at, double cost) {
    if (at == dest) {
      if (!best || cost < best->total_cost) best = Direction{path, cost};
      return;
    }
    for (std::size_t r : net.outgoing(at)) {
      const NodeId next = net.routes()[r].to;
      auto& mark = on_path[net.index_of(next)];
      if (mark) continue;
      mark = 1;
      path.push_back(next);
      dfs(next, cost + costs[r]);
      path.pop_back();
      mark = 0;
    }
  };
  dfs(origin, 0.0);
  return best;
}

inline std::optional<Direction> brute_force_best(const RoadNetwork& net,
                                                 const ImportanceWeights& w, NodeId origin,
                                                 NodeId dest, std::size_t max_nodes = 12) {
  const auto aligned = w.aligned(net.parameter_names());
  return brute_force_best(net, aligned, origin, dest, max_nodes);
}

inline constexpr std::string_view kCsvHeader = "loop,algorithm,mean_tcost,best_tcost,arrived";

inline std::string format_csv_number(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline void write_csv(std::ostream& out, const ComparisonReport& report) {
  out << kCsvHeader << '\n';
  for (const auto& row : report.rows) {
    out << row.loop << ',' << to_string(row.algorithm) << ',' << format_csv_number(row.mean_tcost)
        << ',' << format_csv_number(row.best_tcost) << ',' << format_csv_number(row.arrived)
        << '\n';
  }
}

inline std::string to_csv(const ComparisonReport& report) {
  std::ostringstream out;
  write_csv(out, report);
  return out.str();
}

inline void emit_csv(const ComparisonReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(out, report);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

/// Reads rows back from write_csv output.
inline std::vector<ReportRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("missing or wrong CSV header");
  }
  auto number = [](const std::string& field) {
    return field == "NA" ? std::numeric_limits<double>::quiet_NaN() : std::stod(field);
  };
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 5) throw std::runtime_error("CSV row needs 5 fields: " + line);
    ReportRow row;
    row.loop = std::stoi(fields[0]);
    auto algo = parse_algorithm(fields[1]);
    if (!algo) throw std::runtime_error("unknown algorithm in CSV: " + fields[1]);
    row.algorithm = *algo;
    row.mean_tcost = number(fields[2]);
    row.best_tcost = number(fields[3]);
    row.arrived = number(fields[4]);
    rows.push_back(row);
  }
  return rows;
}

/// Parses "k=v,k=v" into weights.
inline ImportanceWeights parse_weights(std::string_view text) {
  std::map<std::string, double> m;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (item.empty() || eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("weights must look like name=value,...: '" + std::string(item) +
                                  "'");
    }
    const std::string key(item.substr(0, eq));
    const auto value_text = item.substr(eq + 1);
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc{} || ptr != value_text.data() + value_text.size()) {
      throw std::invalid_argument("bad weight value for '" + key + "'");
    }
    if (!m.emplace(key, value).second) {
      throw std::invalid_argument("weight '" + key + "' given twice");
    }
    pos = comma + 1;
  }
  return ImportanceWeights(std::move(m));
}

}  // namespace antroute

#endif
