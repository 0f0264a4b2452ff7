#include "sigtamp/flow_solver.hpp"

#include <deque>
#include <limits>

#include "sigtamp/errors.hpp"
#include "sigtamp/kernels.hpp"

namespace sigtamp {

FlowProblem to_flow_problem(const SuperGraph& graph) {
  FlowProblem p;
  p.num_nodes = static_cast<std::int32_t>(graph.nodes.size());
  p.tail.reserve(graph.arcs.size());
  p.head.reserve(graph.arcs.size());
  p.capacity.reserve(graph.arcs.size());
  for (const SuperArc& a : graph.arcs) {
    p.tail.push_back(a.tail);
    p.head.push_back(a.head);
    p.capacity.push_back(a.capacity);
  }
  p.supply = graph.supply;
  return p;
}

namespace {

IntegralFlow extract(const NetworkSimplex& simplex, std::size_t arcs) {
  IntegralFlow result;
  result.arc_flow.resize(arcs);
  for (std::size_t a = 0; a < arcs; ++a) {
    const std::int64_t f = simplex.flow(a);
    if (f < 0 || f > std::numeric_limits<std::int32_t>::max()) {
      throw InvariantError("solver produced an out-of-range arc flow");
    }
    result.arc_flow[a] = static_cast<std::int32_t>(f);
  }
  result.objective = simplex.objective();
  return result;
}

IntegralFlow run_simplex(NetworkSimplex& simplex, std::size_t arcs) {
  switch (simplex.run()) {
    case NetworkSimplex::Status::optimal:
      return extract(simplex, arcs);
    case NetworkSimplex::Status::infeasible:
      throw InvariantError("min-cost flow is infeasible: supplies cannot be routed");
    case NetworkSimplex::Status::unbounded:
      throw InvariantError("min-cost flow is unbounded");
  }
  throw InvariantError("unknown solver status");
}

}  // namespace

IntegralFlow solve_min_cost(const FlowProblem& problem, std::span<const std::int64_t> cost) {
  NetworkSimplex simplex(problem);
  simplex.set_costs(cost);
  return run_simplex(simplex, problem.arc_count());
}

IntegralFlow solve_min_cost(const SuperGraph& graph, std::span<const std::int64_t> cost) {
  if (!incidence_check(graph)) throw InvariantError("super-graph fails the incidence check");
  return solve_min_cost(to_flow_problem(graph), cost);
}

CostVector lexicographic_costs(std::span<const std::int64_t> primary,
                               std::span<const std::int64_t> secondary,
                               std::int64_t bound_secondary_range) {
  if (bound_secondary_range <= 0) throw InputError("secondary range bound must be positive");
  if (primary.size() != secondary.size()) throw InputError("cost vectors differ in length");
  const Int128 weight = static_cast<Int128>(bound_secondary_range) + 1;
  CostVector combined(primary.size());
  for (std::size_t a = 0; a < primary.size(); ++a) {
    const Int128 c = weight * primary[a] + secondary[a];
    if (!fits_int64(c)) throw InvariantError("lexicographic cost overflows 64 bits");
    combined[a] = static_cast<std::int64_t>(c);
  }
  return combined;
}

IntegralFlow solve_lexicographic(const SuperGraph& graph, std::span<const std::int64_t> primary,
                                 std::span<const std::int64_t> secondary,
                                 std::int64_t bound_secondary_range) {
  const CostVector combined = lexicographic_costs(primary, secondary, bound_secondary_range);
  IntegralFlow flow = solve_min_cost(graph, combined);
  flow.objective = evaluate_cost(primary, flow.arc_flow);
  return flow;
}

Int128 evaluate_cost(std::span<const std::int64_t> cost, std::span<const std::int32_t> flow) {
  if (cost.size() != flow.size()) throw InputError("cost and flow vectors differ in length");
  Int128 total = 0;
  for (std::size_t a = 0; a < cost.size(); ++a) total += static_cast<Int128>(cost[a]) * flow[a];
  return total;
}

FeasibilityReport check_feasibility(const FlowProblem& problem, std::span<const std::int32_t> flow) {
  FeasibilityReport report;
  if (flow.size() != problem.arc_count()) {
    report.size_mismatch = true;
    return report;
  }
  std::vector<std::int32_t> caps(problem.arc_count());
  for (std::size_t a = 0; a < caps.size(); ++a) {
    caps[a] = static_cast<std::int32_t>(
        std::min<std::int64_t>(problem.capacity[a], std::numeric_limits<std::int32_t>::max()));
  }
  report.bound_violations = kernels::count_out_of_bounds(flow, caps);
  std::vector<std::int64_t> net(static_cast<std::size_t>(problem.num_nodes), 0);
  for (std::size_t a = 0; a < flow.size(); ++a) {
    net[static_cast<std::size_t>(problem.tail[a])] += flow[a];
    net[static_cast<std::size_t>(problem.head[a])] -= flow[a];
  }
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (net[v] != problem.supply[v]) ++report.conservation_violations;
  }
  return report;
}

FeasibilityReport check_feasibility(const SuperGraph& graph, std::span<const std::int32_t> flow) {
  return check_feasibility(to_flow_problem(graph), flow);
}

bool verify_optimality(const FlowProblem& problem, std::span<const std::int64_t> cost,
                       std::span<const std::int32_t> flow) {
  if (cost.size() != problem.arc_count()) return false;
  if (!check_feasibility(problem, flow).ok()) return false;

  struct ResidualArc {
    std::int32_t to;
    Int128 cost;
  };
  const auto n = static_cast<std::size_t>(problem.num_nodes);
  std::vector<std::vector<ResidualArc>> residual(n);
  for (std::size_t a = 0; a < problem.arc_count(); ++a) {
    const auto u = static_cast<std::size_t>(problem.tail[a]);
    const auto v = static_cast<std::size_t>(problem.head[a]);
    if (flow[a] < problem.capacity[a]) residual[u].push_back({problem.head[a], cost[a]});
    if (flow[a] > 0) residual[v].push_back({problem.tail[a], -static_cast<Int128>(cost[a])});
  }

  // Queue-based Bellman-Ford from a virtual root joined to every node by a
  // zero-cost arc; a shortest path using n or more arcs means a negative cycle.
  std::vector<Int128> dist(n, 0);
  std::vector<std::int32_t> hops(n, 0);
  std::vector<char> queued(n, 1);
  std::deque<std::int32_t> queue;
  for (std::size_t v = 0; v < n; ++v) queue.push_back(static_cast<std::int32_t>(v));
  while (!queue.empty()) {
    const auto u = static_cast<std::size_t>(queue.front());
    queue.pop_front();
    queued[u] = 0;
    for (const ResidualArc& r : residual[u]) {
      const auto v = static_cast<std::size_t>(r.to);
      if (dist[u] + r.cost < dist[v]) {
        dist[v] = dist[u] + r.cost;
        hops[v] = hops[u] + 1;
        if (static_cast<std::size_t>(hops[v]) > n) return false;
        if (!queued[v]) {
          queued[v] = 1;
          queue.push_back(r.to);
        }
      }
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (const ResidualArc& r : residual[u]) {
      if (r.cost + dist[u] - dist[static_cast<std::size_t>(r.to)] < 0) return false;
    }
  }
  return true;
}

bool verify_optimality(const SuperGraph& graph, std::span<const std::int64_t> cost,
                       std::span<const std::int32_t> flow) {
  return verify_optimality(to_flow_problem(graph), cost, flow);
}

FlowSession::FlowSession(const SuperGraph& graph) : graph_(&graph) {
  if (!incidence_check(graph)) throw InvariantError("super-graph fails the incidence check");
  simplex_ = std::make_unique<NetworkSimplex>(to_flow_problem(graph));
}

IntegralFlow FlowSession::solve(std::span<const std::int64_t> cost) {
  simplex_->set_costs(cost);
  ++solves_;
  return run_simplex(*simplex_, graph_->arcs.size());
}

IntegralFlow FlowSession::solve_lexicographic(std::span<const std::int64_t> primary,
                                              std::span<const std::int64_t> secondary,
                                              std::int64_t bound_secondary_range) {
  const CostVector combined = lexicographic_costs(primary, secondary, bound_secondary_range);
  IntegralFlow flow = solve(combined);
  flow.objective = evaluate_cost(primary, flow.arc_flow);
  return flow;
}

}  // namespace sigtamp
