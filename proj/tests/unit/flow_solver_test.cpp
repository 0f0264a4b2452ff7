#include <gtest/gtest.h>

#include <deque>
#include <limits>
#include <random>

#include "sigtamp/control.hpp"
#include "sigtamp/errors.hpp"
#include "sigtamp/flow_solver.hpp"
#include "sigtamp/oracle.hpp"
#include "support.hpp"

namespace sigtamp {
namespace {

SuperGraph chain_instance() {
  // 3-cell chain src -> c0 -> snk, |T| = 5, D = 2.
  const RoadNetwork net = testing::corridor(1);
  return expand(net, Horizon{5, 2.0}, testing::arrivals(net, 5, {{2}}));
}

// Edmonds-Karp on the super-graph without its residual arcs.
std::int64_t max_exit_flow(const SuperGraph& g) {
  const std::size_t n = g.node_count();
  struct E {
    std::size_t to;
    std::int64_t cap;
    std::size_t rev;
  };
  std::vector<std::vector<E>> adj(n);
  for (const SuperArc& a : g.arcs) {
    if (a.cls == ArcClass::residual) continue;
    const auto u = static_cast<std::size_t>(a.tail);
    const auto v = static_cast<std::size_t>(a.head);
    adj[u].push_back({v, a.capacity, adj[v].size()});
    adj[v].push_back({u, 0, adj[u].size() - 1});
  }
  const auto s = static_cast<std::size_t>(g.source);
  const auto t = static_cast<std::size_t>(g.sink);
  std::int64_t total = 0;
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> prev(n, {n, 0});
    std::deque<std::size_t> q{s};
    prev[s] = {s, 0};
    while (!q.empty() && prev[t].first == n) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t k = 0; k < adj[u].size(); ++k) {
        const E& e = adj[u][k];
        if (e.cap > 0 && prev[e.to].first == n) {
          prev[e.to] = {u, k};
          q.push_back(e.to);
        }
      }
    }
    if (prev[t].first == n) return total;
    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = t; v != s; v = prev[v].first) push = std::min(push, adj[prev[v].first][prev[v].second].cap);
    for (std::size_t v = t; v != s; v = prev[v].first) {
      E& e = adj[prev[v].first][prev[v].second];
      e.cap -= push;
      adj[v][e.rev].cap += push;
    }
    total += push;
  }
}

TEST(SolveMinCost, ChainTravelTimeMatchesOracle) {
  const SuperGraph g = chain_instance();
  const CostVector c = travel_time_costs(g);
  const IntegralFlow f = solve_min_cost(g, c);
  const std::optional<Int128> best = brute_force_min_cost(g, c);
  ASSERT_TRUE(best);
  EXPECT_EQ(f.objective, *best);
  EXPECT_TRUE(check_feasibility(g, f.arc_flow).ok());
  EXPECT_TRUE(verify_optimality(g, c, f.arc_flow));
}

TEST(SolveMinCost, ZeroCostChainIsFeasibleWithZeroObjective) {
  const SuperGraph g = chain_instance();
  const IntegralFlow f = solve_min_cost(g, CostVector(g.arc_count(), 0));
  EXPECT_EQ(f.objective, 0);
  EXPECT_TRUE(check_feasibility(g, f.arc_flow).ok());
}

TEST(SolveMinCost, ThroughputCostsMatchMaxFlow) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const testing::MicroInstance m = testing::random_micro_instance(rng);
    CostVector c(m.graph.arc_count(), 0);
    for (std::size_t a : m.graph.sink_arcs) c[a] = -1;
    const IntegralFlow f = solve_min_cost(m.graph, c);
    EXPECT_EQ(f.objective, -static_cast<Int128>(max_exit_flow(m.graph))) << m.description;
  }
}

TEST(SolveMinCost, RandomCostsMatchOracle) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> cost(-4, 4);
  for (int k = 0; k < 15; ++k) {
    const testing::MicroInstance m = testing::random_micro_instance(rng);
    CostVector c(m.graph.arc_count());
    for (auto& x : c) x = cost(rng);
    const IntegralFlow f = solve_min_cost(m.graph, c);
    const std::optional<Int128> best = brute_force_min_cost(m.graph, c);
    ASSERT_TRUE(best) << m.description;
    EXPECT_EQ(f.objective, *best) << m.description;
    EXPECT_TRUE(verify_optimality(m.graph, c, f.arc_flow)) << m.description;
  }
}

TEST(SolveMinCost, RandomPlainNetworksCertified) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 40; ++k) {
    FlowProblem p;
    p.num_nodes = 2 + static_cast<std::int32_t>(rng() % 12);
    const std::size_t arcs = 1 + rng() % 40;
    for (std::size_t a = 0; a < arcs; ++a) {
      p.tail.push_back(static_cast<std::int32_t>(rng() % static_cast<std::size_t>(p.num_nodes)));
      p.head.push_back(static_cast<std::int32_t>(rng() % static_cast<std::size_t>(p.num_nodes)));
      p.capacity.push_back(static_cast<std::int64_t>(rng() % 6));
    }
    // Supplies from a feasible random flow, so every instance is feasible.
    p.supply.assign(static_cast<std::size_t>(p.num_nodes), 0);
    for (std::size_t a = 0; a < arcs; ++a) {
      const std::int64_t x = p.capacity[a] ? static_cast<std::int64_t>(rng() % static_cast<std::size_t>(p.capacity[a] + 1)) : 0;
      p.supply[static_cast<std::size_t>(p.tail[a])] += x;
      p.supply[static_cast<std::size_t>(p.head[a])] -= x;
    }
    CostVector c(arcs);
    for (auto& x : c) x = static_cast<std::int64_t>(rng() % 21) - 10;
    const IntegralFlow f = solve_min_cost(p, c);
    EXPECT_TRUE(check_feasibility(p, f.arc_flow).ok()) << k;
    EXPECT_TRUE(verify_optimality(p, c, f.arc_flow)) << k;
  }
}

TEST(SolveMinCost, InfeasibleProblemThrows) {
  FlowProblem p;
  p.num_nodes = 2;
  p.tail = {0};
  p.head = {1};
  p.capacity = {1};
  p.supply = {2, -2};
  EXPECT_THROW(solve_min_cost(p, CostVector{1}), InvariantError);
}

TEST(VerifyOptimality, RejectsImprovableFlow) {
  const SuperGraph g = chain_instance();
  const CostVector c = travel_time_costs(g);
  const Int128 best = solve_min_cost(g, c).objective;
  std::vector<std::int32_t> worse;
  enumerate_flows(g, [&](std::span<const std::int32_t> flow) {
    if (evaluate_cost(c, flow) > best) {
      worse.assign(flow.begin(), flow.end());
      return false;
    }
    return true;
  });
  ASSERT_FALSE(worse.empty());
  EXPECT_TRUE(check_feasibility(g, worse).ok());
  EXPECT_FALSE(verify_optimality(g, c, worse));
}

TEST(VerifyOptimality, ZeroDemandZeroFlowAnyCost) {
  const RoadNetwork net = testing::toy_crossing(0);
  const SuperGraph g = expand(net, Horizon{3, 2.0}, testing::arrivals(net, 3, {}));
  std::mt19937_64 rng(1);
  CostVector c(g.arc_count());
  for (auto& x : c) x = static_cast<std::int64_t>(rng() % 7);
  EXPECT_TRUE(verify_optimality(g, c, std::vector<std::int32_t>(g.arc_count(), 0)));
}

TEST(CheckFeasibility, FlagsBoundsAndConservation) {
  const SuperGraph g = chain_instance();
  std::vector<std::int32_t> flow = solve_min_cost(g, travel_time_costs(g)).arc_flow;
  flow[0] += 1;
  const FeasibilityReport r = check_feasibility(g, flow);
  EXPECT_FALSE(r.ok());
  EXPECT_GT(r.conservation_violations + r.bound_violations, 0u);
  EXPECT_TRUE(check_feasibility(g, std::vector<std::int32_t>(3, 0)).size_mismatch);
}

TEST(Lexicographic, DegenerateSecondaryOrPrimary) {
  const SuperGraph g = testing::crossing_toy_graph();
  const CostVector c = travel_time_costs(g);
  const CostVector zero(g.arc_count(), 0);
  EXPECT_EQ(solve_lexicographic(g, c, zero, 1).objective, solve_min_cost(g, c).objective);
  const IntegralFlow f = solve_lexicographic(g, zero, c, 1000);
  EXPECT_EQ(evaluate_cost(c, f.arc_flow), solve_min_cost(g, c).objective);
  EXPECT_THROW(lexicographic_costs(c, c, 0), InputError);
}

TEST(Lexicographic, MatchesOracleTwoStageMinimum) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> cost(-3, 3);
  for (int k = 0; k < 8; ++k) {
    const testing::MicroInstance m = testing::random_micro_instance(rng);
    CostVector p(m.graph.arc_count());
    CostVector s(m.graph.arc_count());
    for (auto& x : p) x = cost(rng);
    for (auto& x : s) x = cost(rng);
    const std::int64_t bound = cost_spread_bound(m.graph, s);
    const IntegralFlow f = solve_lexicographic(m.graph, p, s, bound);
    const Int128 best_primary = *brute_force_min_cost(m.graph, p);
    EXPECT_EQ(f.objective, best_primary);
    Int128 best_secondary = std::numeric_limits<std::int64_t>::max();
    enumerate_flows(m.graph, [&](std::span<const std::int32_t> x) {
      if (evaluate_cost(p, x) == best_primary) best_secondary = std::min(best_secondary, evaluate_cost(s, x));
      return true;
    });
    EXPECT_EQ(evaluate_cost(s, f.arc_flow), best_secondary) << m.description;
  }
}

TEST(FlowSession, WarmStartsAgreeWithColdSolves) {
  const RoadNetwork net = testing::toy_double_crossing(2);
  const SuperGraph g = expand(net, Horizon{8, 2.0}, testing::arrivals(net, 8, {{1, 1, 1}, {1, 0, 1}, {0, 1, 1}}));
  FlowSession session(g);
  std::mt19937_64 rng(31);
  for (int k = 0; k < 12; ++k) {
    CostVector c(g.arc_count());
    for (auto& x : c) x = static_cast<std::int64_t>(rng() % 9) - 4;
    EXPECT_EQ(session.solve(c).objective, solve_min_cost(g, c).objective) << k;
  }
  EXPECT_EQ(session.solves(), 12u);
}

}  // namespace
}  // namespace sigtamp
