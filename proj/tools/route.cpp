// Command-line route planner over a map file.

#include <cstdint>
#include <exception>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "antroute/harness.hpp"

namespace {

void print_direction(std::ostream& out, const antroute::RoadNetwork& net,
                     const antroute::AlgorithmOutcome& outcome, double velocity_kmh) {
  out << "algorithm: " << antroute::to_string(outcome.algorithm) << '\n';
  out << "direction:";
  for (std::size_t i = 0; i < outcome.best.nodes.size(); ++i) {
    out << (i == 0 ? " " : " -> ") << outcome.best.nodes[i];
  }
  out << '\n' << "cost: " << std::setprecision(10) << outcome.best.total_cost << '\n';
  if (outcome.final_costs.size() > 1) {
    out << "mean final cost over " << outcome.final_costs.size()
        << " repeats: " << outcome.mean_final_cost() << '\n';
  }
  if (outcome.fallback_count > 0) {
    out << "a-star fallback used in " << outcome.fallback_count << " repeat(s)\n";
  }
  if (net.distance_index()) {
    double meters = 0.0;
    for (std::size_t i = 1; i < outcome.best.nodes.size(); ++i) {
      const auto r = net.find_route(outcome.best.nodes[i - 1], outcome.best.nodes[i]);
      meters += net.routes()[*r].distance_m;
    }
    out << "length: " << meters << " m, travel time at " << velocity_kmh
        << " km/h: " << antroute::travel_time_cost(meters, velocity_kmh) << " s\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  namespace ar = antroute;

  CLI::App app{"Multi-criteria route planner (A*, ant colony, A*-seeded ant colony)"};
  std::string map_path;
  ar::NodeId origin = 0;
  ar::NodeId dest = 0;
  std::string weights_text;
  std::string algo_text;
  int repeats = 1;
  std::uint64_t seed = 0;
  std::optional<int> loops;
  std::optional<int> ants;
  std::optional<double> delta_tau;
  std::string out_path;
  double velocity = 40.0;
  std::string start_time = "18:00";

  app.add_option("--map", map_path, "Map file")->required();
  app.add_option("--origin", origin, "Origin intersection id")->required();
  app.add_option("--dest", dest, "Destination intersection id")->required();
  app.add_option("--weights", weights_text, "Importance rates, name=value,... covering PARAMS")
      ->required();
  app.add_option("--algo", algo_text, "astar | ants | hybrid")
      ->required()
      ->check(CLI::IsMember({"astar", "ants", "hybrid"}));
  app.add_option("--repeats", repeats, "Number of seeded repeats")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "First rng seed; repeat r uses seed + r");
  app.add_option("--loops", loops, "Colony loops")->check(CLI::PositiveNumber);
  app.add_option("--ants", ants, "Ants per loop")->check(CLI::PositiveNumber);
  app.add_option("--delta-tau", delta_tau, "Pheromone boost along A* candidates (>= 1)");
  app.add_option("--out", out_path, "Write per-loop CSV report here");
  app.add_option("--velocity", velocity, "Average velocity in km/h")->check(CLI::PositiveNumber);
  app.add_option("--start-time", start_time, "Start time HH:MM (metadata only)")
      ->check([](const std::string& s) {
        static const std::regex hhmm("([01][0-9]|2[0-3]):[0-5][0-9]");
        return std::regex_match(s, hhmm) ? std::string() : std::string("expected HH:MM");
      });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ar::exit_code::ok : ar::exit_code::usage;
  }

  ar::ExperimentSpec spec;
  spec.map_path = map_path;
  spec.origin = origin;
  spec.dest = dest;
  spec.algorithm = *ar::parse_algorithm(algo_text);
  spec.repeats = repeats;
  spec.rng_seed = seed;
  spec.overrides.loops = loops;
  spec.overrides.ants = ants;
  spec.overrides.delta_tau = delta_tau;
  spec.velocity_kmh = velocity;
  spec.start_time = start_time;
  try {
    spec.weights = ar::parse_weights(weights_text);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ar::exit_code::usage;
  } catch (const ar::NetworkError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ar::exit_code::invalid_input;
  }

  try {
    const auto net = ar::load_map(spec.map_path);
    const auto report = ar::run_experiment(spec, net);
    std::cout << "start time: " << spec.start_time << ", velocity: " << spec.velocity_kmh
              << " km/h\n";
    print_direction(std::cout, net, report.outcomes.front(), spec.velocity_kmh);
    if (!out_path.empty()) ar::emit_csv(report, out_path);
  } catch (const ar::NoDirectionFound& e) {
    std::cerr << "error: " << e.what() << " from " << spec.origin << " to " << spec.dest << '\n';
    return ar::exit_code::unreachable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ar::exit_code::invalid_input;
  }
  return ar::exit_code::ok;
}
