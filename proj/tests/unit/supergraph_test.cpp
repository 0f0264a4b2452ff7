#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "sigtamp/errors.hpp"
#include "sigtamp/scenarios.hpp"
#include "sigtamp/supergraph.hpp"
#include "support.hpp"

namespace sigtamp {
namespace {

TEST(DiscretizeRate, CumulativeRoundingKeepsTotals) {
  const auto a = discretize_rate(400, Horizon{450, 2.0});
  std::int64_t total = 0;
  for (auto x : a) {
    EXPECT_TRUE(x == 0 || x == 1);
    total += x;
  }
  EXPECT_EQ(total, 100);
  // 1800 veh/hr at 2 s is exactly one vehicle per step.
  for (auto x : discretize_rate(1800, Horizon{10, 2.0})) EXPECT_EQ(x, 1);
  for (auto x : discretize_rate(0, Horizon{10, 2.0})) EXPECT_EQ(x, 0);
}

TEST(Expand, CorridorArcCountByHand) {
  // src, c0, snk; |T| = 4. Holdover cells src and c0, two connectors:
  // 4·(2·2 + 2) + 4 source + 4 sink + 2 residual = 34.
  const RoadNetwork net = testing::corridor(1);
  const SuperGraph g = expand(net, Horizon{4, 2.0}, testing::arrivals(net, 4, {{2}}));
  EXPECT_EQ(g.arc_count(), 34u);
  EXPECT_EQ(g.arc_count(), expected_arc_count(*g.topology, g.horizon, g.sink_policy));
  EXPECT_EQ(g.total_demand, 2);
  EXPECT_EQ(g.sink_arcs.size(), 4u);
  EXPECT_EQ(g.residual_arcs.size(), 2u);
  EXPECT_TRUE(g.conflict_arcs.empty());
  EXPECT_TRUE(incidence_check(g));
}

TEST(Expand, OccupancyPolicyAddsSinkHoldover) {
  const RoadNetwork net = testing::corridor(1);
  const SuperGraph g = expand(net, Horizon{4, 2.0}, testing::arrivals(net, 4, {{2}}), SinkPolicy::occupancy);
  EXPECT_EQ(g.arc_count(), 4u * (2 * 3 + 2) + 4 + 4 + 3);
  EXPECT_EQ(g.arc_count(), expected_arc_count(*g.topology, g.horizon, g.sink_policy));
  for (std::size_t a : g.sink_arcs) EXPECT_EQ(g.arcs[a].capacity, 5);
}

TEST(Expand, ClassCountsMatchFormulaOnGrids) {
  for (GridKind kind : {GridKind::A, GridKind::B}) {
    const RoadNetwork net = generate_regular_grid(kind);
    const Horizon h{20, 2.0};
    for (SinkPolicy p : {SinkPolicy::uncapacitated, SinkPolicy::occupancy}) {
      const SuperGraph g = expand(net, h, demand_profile(net, 900, h), p);
      EXPECT_EQ(g.arc_count(), expected_arc_count(*g.topology, h, p));
      EXPECT_TRUE(incidence_check(g));
    }
  }
}

TEST(Expand, SupplyAndCapacities) {
  const RoadNetwork net = testing::corridor(2);
  const SuperGraph g = expand(net, Horizon{5, 2.0}, testing::arrivals(net, 5, {{1, 0, 2}}));
  EXPECT_EQ(g.supply[static_cast<std::size_t>(g.source)], 3);
  EXPECT_EQ(g.supply[static_cast<std::size_t>(g.sink)], -3);
  std::int64_t sum = 0;
  for (auto b : g.supply) sum += b;
  EXPECT_EQ(sum, 0);
  for (const SuperArc& a : g.arcs) {
    if (a.cls == ArcClass::source) {
      const std::int32_t expected = a.t == 0 ? 1 : a.t == 2 ? 2 : 0;
      EXPECT_EQ(a.capacity, expected);
    }
    if (a.cls == ArcClass::occupancy) {
      const bool source_cell = g.topology->cells[a.object].kind == CellKind::source;
      EXPECT_EQ(a.capacity, source_cell ? 3 : 5);
    }
    if (a.cls == ArcClass::connector) {
      EXPECT_EQ(a.capacity, 1);
    }
  }
}

TEST(Expand, RejectsBadDemandAndHorizon) {
  const RoadNetwork net = testing::corridor(1);
  DemandProfile wrong;
  wrong.entries.push_back({"c0", {1, 0}});
  EXPECT_THROW(expand(net, Horizon{2, 2.0}, wrong), InputError);
  EXPECT_THROW(expand(net, Horizon{0, 2.0}, DemandProfile{}), InputError);
  DemandProfile short_list;
  short_list.entries.push_back({"src", {1}});
  EXPECT_THROW(expand(net, Horizon{2, 2.0}, short_list), InputError);
}

TEST(Expand, ZeroDemandIsFeasibleAndBalanced) {
  const RoadNetwork net = testing::toy_crossing(0);
  const SuperGraph g = expand(net, Horizon{3, 2.0}, testing::arrivals(net, 3, {}));
  EXPECT_EQ(g.total_demand, 0);
  EXPECT_TRUE(incidence_check(g));
}

TEST(IncidenceCheck, DetectsBrokenArc) {
  SuperGraph g = testing::crossing_toy_graph();
  ASSERT_TRUE(incidence_check(g));
  g.arcs[3].head = kNoNode;
  EXPECT_FALSE(incidence_check(g));
  SuperGraph h = testing::crossing_toy_graph();
  h.supply[0] += 1;
  EXPECT_FALSE(incidence_check(h));
}

TEST(ConflictArcs, OnePerGadgetPerStep) {
  const SuperGraph toy = testing::crossing_toy_graph();
  EXPECT_EQ(conflict_arcs(toy).size(), 6u);

  const RoadNetwork net = generate_regular_grid(GridKind::A);
  const Horizon h{450, 2.0};
  const SuperGraph g = expand(net, h, demand_profile(net, 400, h));
  const std::vector<ArcKey> keys = conflict_arcs(g);
  ASSERT_EQ(keys.size(), 1800u);
  std::set<std::pair<std::string, int>> seen;
  for (const ArcKey& k : keys) {
    EXPECT_EQ(g.arcs[k.arc].capacity, 1);
    EXPECT_EQ(k.cls, ArcClass::connector);
    seen.insert({k.object, k.t});
  }
  EXPECT_EQ(seen.size(), 1800u);

  const RoadNetwork plain = testing::corridor(3);
  EXPECT_TRUE(conflict_arcs(expand(plain, Horizon{5, 2.0}, testing::arrivals(plain, 5, {{1}}))).empty());
}

TEST(DagOrder, EveryArcPointsForward) {
  const SuperGraph g = testing::crossing_toy_graph(1);
  const std::vector<NodeId> order = to_dag_order(g);
  ASSERT_EQ(order.size(), g.node_count());
  std::vector<std::size_t> rank(g.node_count());
  for (std::size_t k = 0; k < order.size(); ++k) rank[static_cast<std::size_t>(order[k])] = k;
  for (const SuperArc& a : g.arcs) {
    EXPECT_LT(rank[static_cast<std::size_t>(a.tail)], rank[static_cast<std::size_t>(a.head)]);
  }
  EXPECT_EQ(order.front(), g.source);
}

TEST(EdgeList, OneLinePerArcWithOptionalFlow) {
  const SuperGraph g = testing::crossing_toy_graph();
  std::ostringstream plain;
  write_edge_list(plain, g);
  std::size_t lines = 0;
  for (char c : plain.str()) lines += c == '\n' ? 1 : 0;
  EXPECT_EQ(lines, g.arc_count());

  std::vector<std::int32_t> flow(g.arc_count(), 0);
  std::ostringstream with_flow;
  write_edge_list(with_flow, g, flow);
  std::istringstream first(with_flow.str());
  std::string line;
  std::getline(first, line);
  std::istringstream fields(line);
  std::vector<std::string> cols;
  for (std::string f; fields >> f;) cols.push_back(f);
  EXPECT_EQ(cols.size(), 7u);
}

}  // namespace
}  // namespace sigtamp
