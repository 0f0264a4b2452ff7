#include <gtest/gtest.h>

#include <random>

#include "sigtamp/adversary.hpp"
#include "sigtamp/errors.hpp"
#include "sigtamp/oracle.hpp"
#include "support.hpp"

namespace sigtamp {
namespace {

std::int64_t hamming(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  std::int64_t d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += a[k] != b[k] ? 1 : 0;
  return d;
}

std::int64_t exits(const SuperGraph& g, std::span<const std::int32_t> flow) {
  std::int64_t total = 0;
  for (std::size_t a : g.sink_arcs) total += flow[a];
  return total;
}

TEST(Encoding, IdleOptimumGivesUnitConflictCosts) {
  const RoadNetwork net = testing::toy_crossing(0);
  const SuperGraph g = expand(net, Horizon{4, 2.0}, testing::arrivals(net, 4, {}));
  const ObjectiveEncoding e = encode_objectives(optimal_control(g), g);
  for (std::size_t a : g.conflict_arcs) EXPECT_EQ(e.z2_costs[a], 1);
  EXPECT_EQ(e.z2_constant, 0);
  EXPECT_EQ(e.z2_range, 4);
}

TEST(Encoding, OptimumScoresZero) {
  const SuperGraph g = testing::crossing_toy_graph();
  const OptimalSolution opt = optimal_control(g);
  const ObjectiveEncoding e = encode_objectives(opt, g);
  EXPECT_EQ(e.z1(opt.flow.arc_flow), 0);
  EXPECT_EQ(e.z2(opt.flow.arc_flow), 0);
  const AttackEvaluation ev = evaluate_attack(opt.flow.arc_flow, opt, g);
  EXPECT_EQ(ev.z1, 0);
  EXPECT_EQ(ev.z2, 0);
  EXPECT_EQ(ev.schedule, opt.raw_schedule);
}

TEST(Encoding, LinearizationIsExactOnBinaryConflictVectors) {
  const SuperGraph g = testing::crossing_toy_graph(1);
  const OptimalSolution opt = optimal_control(g);
  const ObjectiveEncoding e = encode_objectives(opt, g);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 1000; ++k) {
    std::vector<std::int32_t> x(g.arc_count());
    for (auto& v : x) v = static_cast<std::int32_t>(rng() % 4);
    for (std::size_t a : g.conflict_arcs) x[a] = static_cast<std::int32_t>(rng() % 2);
    const auto conf = gather(x, g.conflict_arcs);
    ASSERT_EQ(e.z2(x), hamming(conf, opt.conflict_flow));
    ASSERT_EQ(e.z1(x), exits(g, x) - opt.throughput_curve.back());
  }
}

TEST(Encoding, FlippingOneGrantedStepCostsTwo) {
  const SuperGraph g = testing::crossing_toy_graph();
  const OptimalSolution opt = optimal_control(g);
  bool found = false;
  enumerate_flows(g, [&](std::span<const std::int32_t> x) {
    const auto conf = gather(x, g.conflict_arcs);
    std::int64_t on_to_off = 0;
    std::int64_t off_to_on = 0;
    for (std::size_t k = 0; k < conf.size(); ++k) {
      on_to_off += opt.conflict_flow[k] == 1 && conf[k] == 0 ? 1 : 0;
      off_to_on += opt.conflict_flow[k] == 0 && conf[k] == 1 ? 1 : 0;
    }
    if (on_to_off == 1 && off_to_on == 1) {
      EXPECT_EQ(evaluate_attack(x, opt, g).z2, 2);
      found = true;
      return false;
    }
    return true;
  });
  EXPECT_TRUE(found);
}

TEST(Encoding, RejectsNonBinaryOptimum) {
  RoadNetwork net = testing::toy_crossing(0);
  for (Cell& c : net.cells) c.flow_capacity = 2;
  for (Connector& c : net.connectors) c.capacity = 2;
  net.conflict_groups[0].gadget_capacity = 2;
  net.cells[*net.find_cell("w.in")].lanes = 2;
  const SuperGraph g = expand(net, Horizon{4, 2.0}, testing::arrivals(net, 4, {{2, 2}}));
  const OptimalSolution opt = optimal_control(g);
  EXPECT_THROW(encode_objectives(opt, g), InputError);
}

TEST(Frontier, ZeroDemandIsOnePointAtOrigin) {
  const RoadNetwork net = testing::toy_crossing(0);
  const SuperGraph g = expand(net, Horizon{4, 2.0}, testing::arrivals(net, 4, {}));
  const ParetoFrontier f = pareto_frontier(g, optimal_control(g));
  EXPECT_EQ(f.pairs(), (std::vector<ObjectivePair>{{0, 0}}));
  EXPECT_EQ(brute_force_frontier(g, f.encoding), f.pairs());
}

TEST(Frontier, SingleVehicleTwoStepsByHand) {
  // One vehicle, |T| = 2: it either crosses at step 1 and exits, or the
  // core arc is switched off and it is held back.
  const RoadNetwork net = testing::toy_crossing(0);
  const SuperGraph g = expand(net, Horizon{2, 2.0}, testing::arrivals(net, 2, {{1}}));
  const ParetoFrontier f = pareto_frontier(g, optimal_control(g));
  const std::vector<ObjectivePair> hand{{0, 0}, {-1, 1}};
  EXPECT_EQ(f.pairs(), hand);
  EXPECT_EQ(brute_force_frontier(g, f.encoding), hand);
}

TEST(Frontier, CrossingToyMatchesOracleAndWitnesses) {
  for (int down : {0, 1}) {
    const SuperGraph g = testing::crossing_toy_graph(down);
    const OptimalSolution opt = optimal_control(g);
    const ParetoFrontier f = pareto_frontier(g, opt);
    EXPECT_EQ(f.pairs(), brute_force_frontier(g, f.encoding)) << down;
    for (const ParetoPoint& p : f.points) {
      ASSERT_TRUE(p.witness);
      const AttackEvaluation ev = evaluate_attack(p.witness->arc_flow, opt, g);
      EXPECT_EQ(ev.z1, p.z1);
      EXPECT_EQ(ev.z2, p.z2);
      EXPECT_EQ(ev.schedule, *p.schedule);
    }
    EXPECT_TRUE(frontier_audit(f).ok());
    EXPECT_TRUE(support_check(f, g).ok());
    EXPECT_EQ(f.final_segments.size(), f.points.size() - 1);
    const ParetoPoint top = max_impact_point(g, opt);
    EXPECT_EQ(top.z1, f.points.back().z1);
    EXPECT_EQ(top.z2, f.points.back().z2);
  }
}

TEST(Frontier, RandomMicroInstancesMatchOracle) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 12; ++k) {
    const testing::MicroInstance m = testing::random_micro_instance(rng);
    const ParetoFrontier f = pareto_frontier(m.graph, optimal_control(m.graph), {false});
    EXPECT_EQ(f.pairs(), brute_force_frontier(m.graph, f.encoding)) << m.description;
    EXPECT_TRUE(frontier_audit(f).ok()) << m.description;
  }
}

TEST(Frontier, ProvenanceStartsWithEndpoints) {
  const SuperGraph g = testing::crossing_toy_graph();
  const ParetoFrontier f = pareto_frontier(g, optimal_control(g));
  ASSERT_GE(f.provenance.size(), 2u);
  EXPECT_EQ(f.provenance[0].kind, ProvenanceEntry::Kind::endpoint);
  EXPECT_EQ(f.provenance[1].kind, ProvenanceEntry::Kind::endpoint);
  EXPECT_GE(f.solves, 2u);
}

TEST(EvaluateAttack, OracleFlowsScoreAsEncoded) {
  const SuperGraph g = testing::crossing_toy_graph(1);
  const OptimalSolution opt = optimal_control(g);
  const ObjectiveEncoding e = encode_objectives(opt, g);
  std::size_t n = 0;
  enumerate_flows(g, [&](std::span<const std::int32_t> x) {
    const AttackEvaluation ev = evaluate_attack(x, opt, g);
    EXPECT_EQ(ev.z1, e.z1(x));
    EXPECT_EQ(ev.z2, e.z2(x));
    return ++n < 500;
  });
  std::vector<std::int32_t> bad = opt.flow.arc_flow;
  bad[0] += 1;
  EXPECT_THROW(evaluate_attack(bad, opt, g), InputError);
}

TEST(Audit, FlagsUnsortedDominatedAndNonConvex) {
  ParetoFrontier f;
  auto point = [](std::int64_t z1, std::int64_t z2, std::size_t id) {
    ParetoPoint p;
    p.z1 = z1;
    p.z2 = z2;
    p.witness_id = id;
    return p;
  };
  f.points = {point(0, 0, 0), point(-4, 2, 1), point(-6, 6, 2)};
  EXPECT_TRUE(frontier_audit(f).ok());
  f.points = {point(0, 0, 0), point(-1, 2, 1), point(-6, 6, 2)};  // middle above the chord
  EXPECT_FALSE(frontier_audit(f).ok());
  f.points = {point(0, 0, 0), point(0, 2, 1)};  // dominated
  EXPECT_FALSE(frontier_audit(f).ok());
  f.points = {point(-4, 2, 0), point(0, 0, 1)};  // unsorted
  EXPECT_FALSE(frontier_audit(f).ok());
  f.points = {point(0, 0, 0), point(-4, 2, 0)};  // duplicate id
  EXPECT_FALSE(frontier_audit(f).ok());
}

TEST(ExtremeNondominated, LowerLeftHull) {
  const std::vector<ObjectivePair> pts{{0, 0}, {-2, 1}, {-3, 2}, {-4, 3}, {-1, 3}, {-6, 6}, {-6, 8}, {0, 5}};
  // (-3,2) lies on the chord from (-2,1) to (-4,3) and is dropped.
  EXPECT_EQ(extreme_nondominated(pts), (std::vector<ObjectivePair>{{0, 0}, {-2, 1}, {-4, 3}, {-6, 6}}));
  EXPECT_EQ(extreme_nondominated({{5, 5}}), (std::vector<ObjectivePair>{{5, 5}}));
}

}  // namespace
}  // namespace sigtamp
