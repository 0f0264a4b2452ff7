#include <gtest/gtest.h>

#include <filesystem>

#include "sigtamp/errors.hpp"
#include "sigtamp/network_io.hpp"
#include "sigtamp/scenarios.hpp"

namespace sigtamp {
namespace {

int count_kind(const RoadNetwork& net, CellKind kind) {
  int n = 0;
  for (const Cell& c : net.cells) n += c.kind == kind ? 1 : 0;
  return n;
}

struct GridRow {
  GridKind kind;
  int intersections;
  int links;
  double length;
  int sources;
};

TEST(RegularGrid, CharacteristicsTable) {
  const GridRow rows[] = {{GridKind::A, 4, 12, 500, 4}, {GridKind::B, 9, 24, 375, 6}, {GridKind::C, 16, 40, 250, 8}};
  for (const GridRow& r : rows) {
    const RoadNetwork net = generate_regular_grid(r.kind);
    EXPECT_TRUE(validate(net).ok()) << validate(net).summary();
    EXPECT_EQ(static_cast<int>(net.conflict_groups.size()), r.intersections);
    EXPECT_EQ(net.metadata.link_count, r.links);
    EXPECT_DOUBLE_EQ(net.metadata.average_link_length_m, r.length);
    EXPECT_EQ(count_kind(net, CellKind::source), r.sources);
    EXPECT_EQ(count_kind(net, CellKind::sink), r.sources);
    const DegreeSummary d = degree_statistics(net);
    EXPECT_TRUE(d.uniform);
    EXPECT_EQ(d.intersections, r.intersections);
    for (const ConflictGroup& g : net.conflict_groups) EXPECT_EQ(g.movements.size(), 4u);
  }
}

TEST(RegularGrid, CellsPerLinkFollowFreeFlowDistance) {
  // 90 km/h over 2 s is 50 m: 10 cells per 500 m link, 8 per 375 m (7.5 rounded).
  const RoadNetwork a = generate_regular_grid(GridKind::A);
  const RoadNetwork b = generate_regular_grid(GridKind::B);
  const RoadNetwork c = generate_regular_grid(GridKind::C);
  EXPECT_EQ(static_cast<int>(a.cells.size()), 4 * 2 + 12 * 10);
  EXPECT_EQ(static_cast<int>(b.cells.size()), 6 * 2 + 24 * 8);
  EXPECT_EQ(static_cast<int>(c.cells.size()), 8 * 2 + 40 * 5);
}

TEST(RegularGrid, AlternatingDirections) {
  const RoadNetwork net = generate_regular_grid(GridKind::A);
  // Row 0 enters intersection x0_0 first, row 1 enters x1_1 first.
  const auto& g00 = net.conflict_groups[0];
  EXPECT_EQ(g00.id, "x0_0");
  EXPECT_EQ(g00.movements[0].from_cell, "h0.l0.c9");
  const auto& g11 = net.conflict_groups[3];
  EXPECT_EQ(g11.id, "x1_1");
  EXPECT_EQ(g11.movements[0].from_cell, "h1.l0.c9");
}

TEST(Irregular, SeedOneCharacteristics) {
  const RoadNetwork net = generate_irregular(1);
  EXPECT_TRUE(validate(net).ok()) << validate(net).summary();
  const DegreeSummary d = degree_statistics(net);
  EXPECT_EQ(d.intersections, 23);
  EXPECT_FALSE(d.uniform);
  EXPECT_EQ(count_kind(net, CellKind::source), 9);
  EXPECT_EQ(count_kind(net, CellKind::sink), 8);
  EXPECT_NEAR(net.metadata.average_link_length_m, 100.0, 10.0);
  EXPECT_EQ(net.metadata.seed, std::optional<std::uint64_t>(1));
}

TEST(Irregular, DeterministicPerSeed) {
  EXPECT_EQ(network_to_json(generate_irregular(1)), network_to_json(generate_irregular(1)));
  EXPECT_NE(network_to_json(generate_irregular(1)), network_to_json(generate_irregular(2)));
  for (std::uint64_t seed = 2; seed < 8; ++seed) {
    const RoadNetwork net = generate_irregular(seed);
    EXPECT_TRUE(validate(net).ok()) << seed;
    EXPECT_EQ(degree_statistics(net).intersections, 23) << seed;
  }
}

TEST(Irregular, ImpossibleLayoutFails) {
  IrregularSpec spec;
  spec.intersections = 3;
  spec.sources = 9;
  spec.max_attempts = 3;
  EXPECT_THROW(generate_irregular(1, spec), InputError);
}

TEST(Crossing, TwoArmsOneGadget) {
  const RoadNetwork net = generate_crossing(2);
  EXPECT_TRUE(validate(net).ok());
  EXPECT_EQ(net.conflict_groups.size(), 1u);
  EXPECT_EQ(net.cells.size(), 12u);
  EXPECT_THROW(generate_crossing(0), InputError);
}

TEST(Demand, PerSourceTotals) {
  const RoadNetwork net = generate_regular_grid(GridKind::A);
  const Horizon h{450, 2.0};
  const std::pair<double, std::int64_t> cases[] = {{400, 100}, {800, 200}, {1200, 300}, {600, 150}};
  for (const auto& [rate, expected] : cases) {
    const DemandProfile d = demand_profile(net, rate, h);
    ASSERT_EQ(d.entries.size(), 4u);
    for (const auto& e : d.entries) {
      std::int64_t total = 0;
      for (auto a : e.arrivals) total += a;
      EXPECT_EQ(total, expected) << rate;
    }
    EXPECT_EQ(d.total(), 4 * expected);
  }
}

TEST(Scenario, JsonRoundTrip) {
  ScenarioConfig c;
  c.name = "d-run";
  c.network.generator = "D";
  c.network.seed = 42;
  c.horizon_steps = 300;
  c.demand_veh_per_hr = 1200;
  c.sink_policy = SinkPolicy::occupancy;
  EXPECT_EQ(scenario_from_json(scenario_to_json(c)), c);

  ScenarioConfig g;
  g.network.generator = "grid";
  g.network.grid_size = 3;
  g.network.link_length_m = 150;
  EXPECT_EQ(scenario_from_json(scenario_to_json(g)), g);
}

TEST(Scenario, RejectsBadFiles) {
  EXPECT_THROW(scenario_from_json("{"), InputError);
  EXPECT_THROW(scenario_from_json("[]"), InputError);
  EXPECT_THROW(scenario_from_json(R"({"network": {"generator": "D"}})"), InputError);
  EXPECT_THROW(scenario_from_json(R"({"network": {"generator": "A"}, "horizon_steps": 0})"), InputError);
  EXPECT_THROW(scenario_from_json(R"({"network": {"generator": "A"}, "horizon_steps": "long"})"), InputError);
  EXPECT_THROW(scenario_from_json(R"({"network": {"generator": "A"}, "sink_policy": "leaky"})"), InputError);
  EXPECT_THROW(load_scenario(std::string(SIGTAMP_TEST_DATA) + "/network_d_no_seed.json"), InputError);
  ScenarioConfig bad;
  bad.network.generator = "Z";
  EXPECT_THROW(build_network(bad), InputError);
}

TEST(Scenario, FileBackedInstance) {
  const std::filesystem::path path = std::string(SIGTAMP_TEST_DATA) + "/crossing_scenario.json";
  const ScenarioConfig c = load_scenario(path);
  const Instance inst = build_instance(c, path.parent_path());
  EXPECT_EQ(inst.network.name, "toy-crossing");
  EXPECT_EQ(inst.graph.total_demand, 4);
  EXPECT_EQ(inst.graph.conflict_arcs.size(), 6u);
}

TEST(Scenario, GridInstanceHasOneConflictArcPerGadgetStep) {
  ScenarioConfig c;
  c.network.generator = "B";
  c.horizon_steps = 30;
  const Instance inst = build_instance(c);
  EXPECT_EQ(inst.graph.conflict_arcs.size(), 9u * 30u);
  EXPECT_DOUBLE_EQ(c.cell_length_m(), 50.0);
}

}  // namespace
}  // namespace sigtamp
