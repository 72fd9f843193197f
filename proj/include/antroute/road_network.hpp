#ifndef ANTROUTE_ROAD_NETWORK_HPP
#define ANTROUTE_ROAD_NETWORK_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace antroute {

using NodeId = std::int64_t;

/// Name of the parameter whose raw values are meters and get normalized at load time.
inline constexpr std::string_view kDistanceParam = "distance";

/// Upper end of the normalized cost scale.
inline constexpr double kNormalizedScale = 10.0;

/// Parameter names of the six-criterion city traveller profile.
inline const std::vector<std::string>& city_profile_params() {
  static const std::vector<std::string> names = {
      "distance", "width", "traffic_load", "road_risk", "road_quality", "traffic_lights"};
  return names;
}

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MapParseError : public NetworkError {
 public:
  MapParseError(std::size_t line, const std::string& what)
      : NetworkError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Intersection {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;
};

/// Per-parameter costs of one route, aligned with RoadNetwork::parameter_names().
using ParameterVector = std::vector<double>;

struct DirectedRoute {
  NodeId from = 0;
  NodeId to = 0;
  /// Normalized costs (lower is better).
  ParameterVector costs;
  /// Raw length in meters, 0 when the network has no distance parameter.
  double distance_m = 0.0;
};

/// Raw edge as written by a map author: distance in meters, everything else normalized.
struct RouteSpec {
  NodeId from = 0;
  NodeId to = 0;
  ParameterVector raw_costs;
};

/// Directed road network. Immutable once built.
class RoadNetwork {
 public:
  RoadNetwork() = default;

  RoadNetwork(std::vector<std::string> parameter_names,
              std::vector<Intersection> intersections,
              std::vector<RouteSpec> routes)
      : parameter_names_(std::move(parameter_names)), intersections_(std::move(intersections)) {
    for (std::size_t i = 0; i < parameter_names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (parameter_names_[i] == parameter_names_[j]) {
          throw NetworkError("duplicate parameter name '" + parameter_names_[i] + "'");
        }
      }
      if (parameter_names_[i] == kDistanceParam) distance_index_ = i;
    }
    std::sort(intersections_.begin(), intersections_.end(),
              [](const Intersection& a, const Intersection& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < intersections_.size(); ++i) {
      const auto& n = intersections_[i];
      if (n.id <= 0) throw NetworkError("node id must be positive: " + std::to_string(n.id));
      if (!std::isfinite(n.x) || !std::isfinite(n.y)) {
        throw NetworkError("non-finite coordinates for node " + std::to_string(n.id));
      }
      if (!index_.emplace(n.id, i).second) {
        throw NetworkError("duplicate node id " + std::to_string(n.id));
      }
    }

    double max_distance = 0.0;
    for (const auto& r : routes) {
      if (r.raw_costs.size() != parameter_names_.size()) {
        throw NetworkError("route " + std::to_string(r.from) + "->" + std::to_string(r.to) +
                           " has " + std::to_string(r.raw_costs.size()) + " costs, expected " +
                           std::to_string(parameter_names_.size()));
      }
      if (!contains(r.from) || !contains(r.to)) {
        throw NetworkError("unknown node in route " + std::to_string(r.from) + "->" +
                           std::to_string(r.to));
      }
      if (r.from == r.to) throw NetworkError("self loop at node " + std::to_string(r.from));
      for (double c : r.raw_costs) {
        if (!std::isfinite(c) || c < 0.0) {
          throw NetworkError("negative or non-finite cost on route " + std::to_string(r.from) +
                             "->" + std::to_string(r.to));
        }
      }
      if (distance_index_) max_distance = std::max(max_distance, r.raw_costs[*distance_index_]);
    }
    max_edge_distance_m_ = max_distance;

    routes_.reserve(routes.size());
    for (auto& r : routes) {
      DirectedRoute route{r.from, r.to, std::move(r.raw_costs), 0.0};
      if (distance_index_) {
        auto& d = route.costs[*distance_index_];
        route.distance_m = d;
        d = normalize_distance(d);
      }
      const auto key = std::make_pair(route.from, route.to);
      if (!route_index_.emplace(key, routes_.size()).second) {
        throw NetworkError("duplicate directed edge " + std::to_string(route.from) + "->" +
                           std::to_string(route.to));
      }
      routes_.push_back(std::move(route));
    }

    out_.assign(intersections_.size(), {});
    for (std::size_t i = 0; i < routes_.size(); ++i) {
      out_[index_.at(routes_[i].from)].push_back(i);
    }
    for (auto& list : out_) {
      std::sort(list.begin(), list.end(),
                [this](std::size_t a, std::size_t b) { return routes_[a].to < routes_[b].to; });
    }

    geometric_ = true;
    if (distance_index_) {
      for (const auto& r : routes_) {
        const double straight = straight_line_m(r.from, r.to);
        if (r.distance_m + 1e-9 * std::max(1.0, straight) < straight) {
          geometric_ = false;
          break;
        }
      }
    }
  }

  const std::vector<std::string>& parameter_names() const noexcept { return parameter_names_; }
  const std::vector<Intersection>& intersections() const noexcept { return intersections_; }
  const std::vector<DirectedRoute>& routes() const noexcept { return routes_; }
  std::size_t node_count() const noexcept { return intersections_.size(); }
  std::size_t route_count() const noexcept { return routes_.size(); }

  bool contains(NodeId id) const { return index_.count(id) != 0; }

  /// Dense index in [0, node_count()) of an intersection id.
  std::size_t index_of(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw NetworkError("unknown node " + std::to_string(id));
    return it->second;
  }

  const Intersection& intersection(NodeId id) const { return intersections_[index_of(id)]; }

  /// Indices into routes() leaving `id`, ordered by destination id.
  std::span<const std::size_t> outgoing(NodeId id) const { return out_[index_of(id)]; }

  std::optional<std::size_t> find_route(NodeId from, NodeId to) const {
    auto it = route_index_.find({from, to});
    if (it == route_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> distance_index() const noexcept { return distance_index_; }
  double max_edge_distance_m() const noexcept { return max_edge_distance_m_; }

  /// Maps meters onto the normalized [0, 10] scale used for the distance parameter.
  double normalize_distance(double meters) const noexcept {
    if (max_edge_distance_m_ <= 0.0) return 0.0;
    return kNormalizedScale * meters / max_edge_distance_m_;
  }

  double straight_line_m(NodeId a, NodeId b) const {
    const auto& p = intersection(a);
    const auto& q = intersection(b);
    return std::hypot(p.x - q.x, p.y - q.y);
  }

  /// True when every route is at least as long as the straight line between its ends.
  bool geometric() const noexcept { return geometric_; }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<NodeId, NodeId>& p) const noexcept {
      const auto h = static_cast<std::uint64_t>(p.first) * 0x9E3779B97F4A7C15ULL;
      return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(p.second));
    }
  };

  std::vector<std::string> parameter_names_;
  std::vector<Intersection> intersections_;
  std::vector<DirectedRoute> routes_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::unordered_map<std::pair<NodeId, NodeId>, std::size_t, PairHash> route_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::optional<std::size_t> distance_index_;
  double max_edge_distance_m_ = 0.0;
  bool geometric_ = true;
};

/// Importance rate per parameter name.
class ImportanceWeights {
 public:
  ImportanceWeights() = default;
  explicit ImportanceWeights(std::map<std::string, double> weights) : weights_(std::move(weights)) {
    for (const auto& [name, w] : weights_) {
      if (!std::isfinite(w) || w < 0.0) {
        throw NetworkError("weight for '" + name + "' must be finite and >= 0");
      }
    }
  }

  /// Same weight for every name.
  static ImportanceWeights uniform(const std::vector<std::string>& names, double w = 1.0) {
    std::map<std::string, double> m;
    for (const auto& n : names) m[n] = w;
    return ImportanceWeights(std::move(m));
  }

  /// Weight 1 on `name`, 0 elsewhere.
  static ImportanceWeights single(const std::vector<std::string>& names, const std::string& name) {
    std::map<std::string, double> m;
    for (const auto& n : names) m[n] = (n == name) ? 1.0 : 0.0;
    return ImportanceWeights(std::move(m));
  }

  const std::map<std::string, double>& values() const noexcept { return weights_; }

  std::optional<double> get(const std::string& name) const {
    auto it = weights_.find(name);
    if (it == weights_.end()) return std::nullopt;
    return it->second;
  }

  /// Weights ordered like `names`. Throws if any name is missing.
  std::vector<double> aligned(const std::vector<std::string>& names) const {
    std::vector<double> out;
    out.reserve(names.size());
    for (const auto& n : names) {
      auto w = get(n);
      if (!w) throw NetworkError("missing weight for parameter '" + n + "'");
      out.push_back(*w);
    }
    return out;
  }

  /// Like aligned(), and additionally rejects keys that are not parameters of the network.
  std::vector<double> aligned_exact(const std::vector<std::string>& names) const {
    for (const auto& [k, _] : weights_) {
      if (std::find(names.begin(), names.end(), k) == names.end()) {
        throw NetworkError("unknown weight key '" + k + "'");
      }
    }
    return aligned(names);
  }

  ImportanceWeights scaled(double factor) const {
    auto m = weights_;
    for (auto& [_, w] : m) w *= factor;
    return ImportanceWeights(std::move(m));
  }

  bool operator==(const ImportanceWeights&) const = default;

 private:
  std::map<std::string, double> weights_;
};

/// Weights of Table-1 style profiles used by the experiments.
inline ImportanceWeights experience1_weights() {
  return ImportanceWeights({{"distance", 1.0},
                            {"width", 0.25},
                            {"traffic_load", 0.50},
                            {"road_risk", 0.25},
                            {"road_quality", 0.50},
                            {"traffic_lights", 0.25}});
}

inline ImportanceWeights experience2_weights() {
  return ImportanceWeights({{"distance", 0.50},
                            {"width", 0.25},
                            {"traffic_load", 0.75},
                            {"road_risk", 0.75},
                            {"road_quality", 0.50},
                            {"traffic_lights", 0.25}});
}

struct Direction {
  std::vector<NodeId> nodes;
  double total_cost = 0.0;

  bool operator==(const Direction&) const = default;
};

inline double aggregate_route_cost(const DirectedRoute& route, std::span<const double> weights) {
  if (weights.size() != route.costs.size()) {
    throw NetworkError("weight vector covers " + std::to_string(weights.size()) +
                       " parameters, route has " + std::to_string(route.costs.size()));
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < weights.size(); ++l) sum += weights[l] * route.costs[l];
  return sum;
}

inline double aggregate_route_cost(const DirectedRoute& route, const RoadNetwork& net,
                                   const ImportanceWeights& w) {
  const auto aligned = w.aligned(net.parameter_names());
  return aggregate_route_cost(route, aligned);
}

/// Aggregate cost of every route, indexed like net.routes().
inline std::vector<double> route_costs(const RoadNetwork& net, std::span<const double> weights) {
  std::vector<double> out;
  out.reserve(net.route_count());
  for (const auto& r : net.routes()) out.push_back(aggregate_route_cost(r, weights));
  return out;
}

inline double direction_cost(std::span<const NodeId> nodes, const RoadNetwork& net,
                             std::span<const double> weights) {
  double sum = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto r = net.find_route(nodes[i - 1], nodes[i]);
    if (!r) {
      throw NetworkError("no route " + std::to_string(nodes[i - 1]) + "->" +
                         std::to_string(nodes[i]));
    }
    sum += aggregate_route_cost(net.routes()[*r], weights);
  }
  if (nodes.size() == 1) net.index_of(nodes.front());
  return sum;
}

inline double direction_cost(std::span<const NodeId> nodes, const RoadNetwork& net,
                             const ImportanceWeights& w) {
  const auto aligned = w.aligned(net.parameter_names());
  return direction_cost(nodes, net, aligned);
}

/// Seconds needed to cover `distance_m` at `velocity_kmh`.
inline double travel_time_cost(double distance_m, double velocity_kmh) {
  if (!(velocity_kmh > 0.0) || !std::isfinite(velocity_kmh)) {
    throw std::invalid_argument("velocity must be positive");
  }
  if (!(distance_m >= 0.0)) throw std::invalid_argument("distance must be >= 0");
  return distance_m / (velocity_kmh * 1000.0 / 3600.0);
}

/// True if `nodes` is a simple path made of existing routes.
inline bool is_feasible_simple(std::span<const NodeId> nodes, const RoadNetwork& net) {
  if (nodes.empty()) return false;
  std::vector<char> seen(net.node_count(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!net.contains(nodes[i])) return false;
    auto& s = seen[net.index_of(nodes[i])];
    if (s) return false;
    s = 1;
    if (i > 0 && !net.find_route(nodes[i - 1], nodes[i])) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw MapParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Reads the line-oriented map format:
///
///     PARAMS <name_1> ... <name_k>
///     NODE <id> <x> <y>
///     EDGE <from> <to> <oneway:0|1> <c_1> ... <c_k>
///
/// '#' starts a comment. A two-way EDGE expands into two reciprocal routes.
inline RoadNetwork parse_map(std::istream& in) {
  std::optional<std::vector<std::string>> params;
  std::vector<Intersection> nodes;
  std::unordered_map<NodeId, std::size_t> node_lines;
  std::vector<RouteSpec> routes;
  std::map<std::pair<NodeId, NodeId>, std::size_t> edge_lines;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = detail::tokenize(line);
    if (tok.empty()) continue;

    if (tok[0] == "PARAMS") {
      if (params) throw MapParseError(lineno, "PARAMS given twice");
      if (!routes.empty()) throw MapParseError(lineno, "PARAMS must precede EDGE lines");
      if (tok.size() < 2) throw MapParseError(lineno, "PARAMS needs at least one name");
      std::vector<std::string> names;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        std::string name(tok[i]);
        if (std::find(names.begin(), names.end(), name) != names.end()) {
          throw MapParseError(lineno, "duplicate parameter name '" + name + "'");
        }
        names.push_back(std::move(name));
      }
      params = std::move(names);
    } else if (tok[0] == "NODE") {
      if (tok.size() != 4) throw MapParseError(lineno, "NODE expects <id> <x> <y>");
      Intersection n;
      n.id = detail::parse_number<NodeId>(tok[1], lineno, "node id");
      n.x = detail::parse_number<double>(tok[2], lineno, "coordinate");
      n.y = detail::parse_number<double>(tok[3], lineno, "coordinate");
      if (n.id <= 0) throw MapParseError(lineno, "node id must be positive");
      if (!std::isfinite(n.x) || !std::isfinite(n.y)) {
        throw MapParseError(lineno, "non-finite coordinate");
      }
      if (!node_lines.emplace(n.id, lineno).second) {
        throw MapParseError(lineno, "duplicate node id " + std::to_string(n.id));
      }
      nodes.push_back(n);
    } else if (tok[0] == "EDGE") {
      if (!params) throw MapParseError(lineno, "EDGE before PARAMS");
      if (tok.size() < 4) throw MapParseError(lineno, "EDGE expects <from> <to> <oneway> costs...");
      const auto from = detail::parse_number<NodeId>(tok[1], lineno, "node id");
      const auto to = detail::parse_number<NodeId>(tok[2], lineno, "node id");
      const auto oneway = detail::parse_number<int>(tok[3], lineno, "oneway flag");
      if (oneway != 0 && oneway != 1) throw MapParseError(lineno, "oneway flag must be 0 or 1");
      if (tok.size() - 4 != params->size()) {
        throw MapParseError(lineno, "parameter count mismatch: expected " +
                                        std::to_string(params->size()) + " costs, got " +
                                        std::to_string(tok.size() - 4));
      }
      for (NodeId id : {from, to}) {
        if (!node_lines.count(id)) {
          throw MapParseError(lineno, "unknown node " + std::to_string(id));
        }
      }
      if (from == to) throw MapParseError(lineno, "self loop at node " + std::to_string(from));
      ParameterVector costs;
      for (std::size_t i = 4; i < tok.size(); ++i) {
        const double c = detail::parse_number<double>(tok[i], lineno, "cost");
        if (!std::isfinite(c) || c < 0.0) {
          throw MapParseError(lineno, "negative cost '" + std::string(tok[i]) + "'");
        }
        costs.push_back(c);
      }
      auto add = [&](NodeId a, NodeId b) {
        if (!edge_lines.emplace(std::make_pair(a, b), lineno).second) {
          throw MapParseError(lineno, "duplicate directed edge " + std::to_string(a) + "->" +
                                          std::to_string(b));
        }
        routes.push_back({a, b, costs});
      };
      add(from, to);
      if (oneway == 0) add(to, from);
    } else {
      throw MapParseError(lineno, "unknown directive '" + std::string(tok[0]) + "'");
    }
  }
  if (!params) throw MapParseError(lineno, "missing PARAMS line");
  return RoadNetwork(std::move(*params), std::move(nodes), std::move(routes));
}

inline RoadNetwork parse_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_map(in);
}

/// Writes `net` in map format. Every route is emitted as a one-way EDGE carrying raw costs,
/// so parse_map(write_map(net)) reproduces the same network.
inline void write_map(std::ostream& out, const RoadNetwork& net) {
  out << "PARAMS";
  for (const auto& n : net.parameter_names()) out << ' ' << n;
  out << '\n';
  for (const auto& n : net.intersections()) {
    out << "NODE " << n.id << ' ' << detail::format_double(n.x) << ' '
        << detail::format_double(n.y) << '\n';
  }
  const auto dist = net.distance_index();
  for (const auto& r : net.routes()) {
    out << "EDGE " << r.from << ' ' << r.to << " 1";
    for (std::size_t l = 0; l < r.costs.size(); ++l) {
      const double raw = (dist && l == *dist) ? r.distance_m : r.costs[l];
      out << ' ' << detail::format_double(raw);
    }
    out << '\n';
  }
}

inline std::string write_map(const RoadNetwork& net) {
  std::ostringstream out;
  write_map(out, net);
  return out.str();
}

}  // namespace antroute

#endif
