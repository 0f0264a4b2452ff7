#pragma once

// Test networks and scenario files.
//
// Grids: k×k intersections of one-way single-lane streets with directions
// alternating by row and column. Each street runs source cell, k+1 links,
// sink cell; every intersection is one crossing gadget with through and
// turning movements. Irregular networks: seeded Gabriel graph on random
// points, oriented by depth-first search, with boundary sources and sinks.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sigtamp/network.hpp"
#include "sigtamp/supergraph.hpp"

namespace sigtamp {

inline constexpr double kDefaultDeltaTau = 2.0;
inline constexpr int kDefaultMaxOccupancy = 5;
inline constexpr int kDefaultFlowCapacity = 1;
inline constexpr double kDefaultFreeFlowKmh = 90.0;
inline constexpr double kNominalAreaKm2 = 2.5;
inline constexpr int kDurationPresets[] = {300, 450, 600};

struct CellDefaults {
  int max_occupancy = kDefaultMaxOccupancy;
  int flow_capacity = kDefaultFlowCapacity;
};

struct GridSpec {
  int size = 2;               // k intersections per side
  double link_length_m = 500.0;
  double cell_length_m = 50.0;
  CellDefaults cells;
};

enum class GridKind { A, B, C };

GridSpec grid_preset(GridKind kind, double cell_length_m = 50.0);
RoadNetwork generate_grid(const GridSpec& spec);
RoadNetwork generate_regular_grid(GridKind kind, double cell_length_m = 50.0, CellDefaults cells = {});

struct IrregularSpec {
  int intersections = 23;
  int sources = 9;
  int sinks = 8;
  double average_link_length_m = 100.0;
  double cell_length_m = 50.0;
  int max_attempts = 200;
  CellDefaults cells;
};

// Deterministic per seed. Throws InputError when no valid layout is found
// within max_attempts.
RoadNetwork generate_irregular(std::uint64_t seed, const IrregularSpec& spec = {});

// Two single-lane arms crossing at one gadget: W→E and N→S, `arm_cells`
// ordinary cells before and after the crossing on each arm.
RoadNetwork generate_crossing(int arm_cells = 1, CellDefaults cells = {});

// Uniform arrivals at every source cell, discretized per step.
DemandProfile demand_profile(const RoadNetwork& network, double rate_veh_per_hr, const Horizon& horizon);

struct NetworkSpec {
  std::string generator = "A";  // A, B, C, D, grid, crossing, file
  std::optional<std::uint64_t> seed;
  int grid_size = 2;            // generator "grid"
  double link_length_m = 500.0; // generator "grid"
  int arm_cells = 1;            // generator "crossing"
  std::string path;             // generator "file", relative to the scenario file

  bool operator==(const NetworkSpec&) const = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  NetworkSpec network;
  double delta_tau = kDefaultDeltaTau;
  int horizon_steps = 450;
  int max_occupancy = kDefaultMaxOccupancy;
  int flow_capacity = kDefaultFlowCapacity;
  double free_flow_speed_kmh = kDefaultFreeFlowKmh;
  double demand_veh_per_hr = 400.0;
  SinkPolicy sink_policy = SinkPolicy::uncapacitated;
  bool minimize_switches = true;

  double cell_length_m() const { return free_flow_speed_kmh / 3.6 * delta_tau; }
  Horizon horizon() const { return Horizon{horizon_steps, delta_tau}; }
  bool operator==(const ScenarioConfig&) const = default;
};

std::string scenario_to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);
void save_scenario(const ScenarioConfig& config, const std::filesystem::path& path);

// `base_dir` resolves the path of file-backed networks.
RoadNetwork build_network(const ScenarioConfig& config, const std::filesystem::path& base_dir = {});

struct Instance {
  RoadNetwork network;
  DemandProfile demand;
  SuperGraph graph;
};

Instance build_instance(const ScenarioConfig& config, const std::filesystem::path& base_dir = {});

std::string to_string(SinkPolicy policy);
SinkPolicy parse_sink_policy(const std::string& text);

}  // namespace sigtamp
