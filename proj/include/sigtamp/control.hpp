#pragma once

// Travel-time optimal control and the signal schedule read off a flow.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sigtamp/flow_solver.hpp"
#include "sigtamp/network.hpp"
#include "sigtamp/supergraph.hpp"

namespace sigtamp {

// Right-of-way per gadget per step. An empty grant list means "none".
// Gadgets with capacity above one may grant several movements in a step.
struct SignalSchedule {
  std::vector<std::string> group_ids;                          // one per gadget
  std::vector<std::vector<std::vector<Movement>>> grants;      // [gadget][t]

  std::size_t steps() const { return grants.empty() ? 0 : grants.front().size(); }
  std::string label(std::size_t gadget, std::size_t t) const;  // "from>to", "+"-joined, or "none"

  bool operator==(const SignalSchedule&) const = default;
};

struct OptimalSolution {
  IntegralFlow flow;                          // x*
  std::vector<std::int32_t> sink_flow;        // x_S*, aligned with SuperGraph::sink_arcs
  std::vector<std::int32_t> conflict_flow;    // x_conf*, aligned with SuperGraph::conflict_arcs
  std::int64_t total_travel_time = 0;         // vehicle-steps
  std::vector<std::int64_t> throughput_curve; // cumulative exits after step t, t = 0..|T|
  SignalSchedule raw_schedule;                // straight readout of x*
  SignalSchedule schedule;                    // after minimize_switches (equal to raw otherwise)
};

// One unit per vehicle per step spent in a cell (occupancy arcs) and per
// vehicle still inside when the horizon closes (residual arcs). Transshipment
// and connector arcs are free, so crossing a gadget costs no more time than
// a plain connector.
CostVector travel_time_costs(const SuperGraph& graph);

// connector_arcs[c][t] = super-graph arc of connector c at step t.
std::vector<std::vector<std::size_t>> connector_arc_index(const SuperGraph& graph);

OptimalSolution optimal_control(const SuperGraph& graph);

// Fills x_S*, x_conf*, travel time, throughput and both schedules from a flow.
OptimalSolution describe_solution(const SuperGraph& graph, IntegralFlow flow);

SignalSchedule infer_signal_schedule(const SuperGraph& graph, std::span<const std::int32_t> flow);

std::int64_t switch_count(const SignalSchedule& schedule);

// Idle steps inherit the previous grant (the first grant for leading idle steps).
SignalSchedule fill_idle_steps(const SignalSchedule& schedule);

// Heuristic: among optima with the same travel time, prefer flows that keep
// granting the movement of the previous step. Never increases switch_count
// of the filled schedule; throws InvariantError if travel time would change.
OptimalSolution minimize_switches(const OptimalSolution& solution, const SuperGraph& graph,
                                  int max_rounds = 4);

std::vector<std::int32_t> gather(std::span<const std::int32_t> flow,
                                 std::span<const std::size_t> arcs);

// Σ |c_a| · u_a, a bound on how far cᵀx can move between feasible flows.
std::int64_t cost_spread_bound(const SuperGraph& graph, std::span<const std::int64_t> cost);

}  // namespace sigtamp
