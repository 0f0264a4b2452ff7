#include "sigtamp/control.hpp"

#include <algorithm>

#include "sigtamp/errors.hpp"

namespace sigtamp {

std::string SignalSchedule::label(std::size_t gadget, std::size_t t) const {
  const std::vector<Movement>& granted = grants.at(gadget).at(t);
  if (granted.empty()) return "none";
  std::string text;
  for (std::size_t k = 0; k < granted.size(); ++k) {
    if (k) text += '+';
    text += granted[k].from_cell + ">" + granted[k].to_cell;
  }
  return text;
}

CostVector travel_time_costs(const SuperGraph& graph) {
  CostVector cost(graph.arcs.size(), 0);
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    const ArcClass cls = graph.arcs[a].cls;
    if (cls == ArcClass::occupancy || cls == ArcClass::residual) cost[a] = 1;
  }
  return cost;
}

std::vector<std::vector<std::size_t>> connector_arc_index(const SuperGraph& graph) {
  const auto steps = static_cast<std::size_t>(graph.horizon.steps);
  std::vector<std::vector<std::size_t>> index(graph.topology->connectors.size(),
                                              std::vector<std::size_t>(steps, 0));
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    const SuperArc& arc = graph.arcs[a];
    if (arc.cls == ArcClass::connector) index[arc.object][static_cast<std::size_t>(arc.t)] = a;
  }
  return index;
}

std::vector<std::int32_t> gather(std::span<const std::int32_t> flow,
                                 std::span<const std::size_t> arcs) {
  std::vector<std::int32_t> out;
  out.reserve(arcs.size());
  for (std::size_t a : arcs) out.push_back(flow[a]);
  return out;
}

std::int64_t cost_spread_bound(const SuperGraph& graph, std::span<const std::int64_t> cost) {
  Int128 bound = 0;
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    const Int128 c = cost[a] < 0 ? -static_cast<Int128>(cost[a]) : cost[a];
    bound += c * graph.arcs[a].capacity;
  }
  if (!fits_int64(bound)) throw InvariantError("cost spread bound overflows 64 bits");
  return std::max<std::int64_t>(static_cast<std::int64_t>(bound), 1);
}

SignalSchedule infer_signal_schedule(const SuperGraph& graph, std::span<const std::int32_t> flow) {
  if (flow.size() != graph.arcs.size()) throw InputError("flow does not match the super-graph");
  const Topology& topo = *graph.topology;
  const auto steps = static_cast<std::size_t>(graph.horizon.steps);
  const auto arcs = connector_arc_index(graph);

  SignalSchedule schedule;
  for (const GadgetRef& gadget : topo.gadgets) {
    const std::string& core_id = topo.connectors[gadget.core].id;  // "<group>/core"
    schedule.group_ids.push_back(core_id.substr(0, core_id.rfind('/')));
    const int capacity = topo.connectors[gadget.core].capacity;
    std::vector<std::vector<Movement>> per_step(steps);
    for (std::size_t t = 0; t < steps; ++t) {
      const std::int32_t through = flow[arcs[gadget.core][t]];
      if (through > capacity) {
        throw InvariantError("gadget '" + schedule.group_ids.back() + "' carries " +
                             std::to_string(through) + " units at step " + std::to_string(t));
      }
      std::vector<std::string> senders;
      std::vector<std::string> receivers;
      for (std::size_t c : gadget.inbound) {
        for (std::int32_t k = 0; k < flow[arcs[c][t]]; ++k) senders.push_back(topo.object_id(topo.connectors[c].from));
      }
      for (std::size_t c : gadget.outbound) {
        for (std::int32_t k = 0; k < flow[arcs[c][t]]; ++k) receivers.push_back(topo.object_id(topo.connectors[c].to));
      }
      if (senders.size() != receivers.size() || senders.size() != static_cast<std::size_t>(through)) {
        throw InvariantError("gadget '" + schedule.group_ids.back() + "' is not conserving flow");
      }
      // Units inside a gadget are anonymous. Declared movements are matched
      // first; whatever is left is paired in sorted order.
      std::sort(senders.begin(), senders.end());
      std::sort(receivers.begin(), receivers.end());
      for (const Movement& m : gadget.movements) {
        auto s = std::find(senders.begin(), senders.end(), m.from_cell);
        auto r = std::find(receivers.begin(), receivers.end(), m.to_cell);
        while (s != senders.end() && r != receivers.end()) {
          per_step[t].push_back(m);
          senders.erase(s);
          receivers.erase(r);
          s = std::find(senders.begin(), senders.end(), m.from_cell);
          r = std::find(receivers.begin(), receivers.end(), m.to_cell);
        }
      }
      for (std::size_t k = 0; k < senders.size(); ++k) {
        per_step[t].push_back(Movement{senders[k], receivers[k]});
      }
      std::sort(per_step[t].begin(), per_step[t].end());
    }
    schedule.grants.push_back(std::move(per_step));
  }
  return schedule;
}

std::int64_t switch_count(const SignalSchedule& schedule) {
  std::int64_t switches = 0;
  for (const auto& per_step : schedule.grants) {
    for (std::size_t t = 1; t < per_step.size(); ++t) {
      if (per_step[t] != per_step[t - 1]) ++switches;
    }
  }
  return switches;
}

SignalSchedule fill_idle_steps(const SignalSchedule& schedule) {
  SignalSchedule filled = schedule;
  for (auto& per_step : filled.grants) {
    auto first = std::find_if(per_step.begin(), per_step.end(), [](const auto& g) { return !g.empty(); });
    if (first == per_step.end()) continue;
    const std::vector<Movement> leading = *first;
    for (auto it = per_step.begin(); it != first; ++it) *it = leading;
    for (std::size_t t = 1; t < per_step.size(); ++t) {
      if (per_step[t].empty()) per_step[t] = per_step[t - 1];
    }
  }
  return filled;
}

OptimalSolution describe_solution(const SuperGraph& graph, IntegralFlow flow) {
  OptimalSolution sol;
  sol.sink_flow = gather(flow.arc_flow, graph.sink_arcs);
  sol.conflict_flow = gather(flow.arc_flow, graph.conflict_arcs);
  const CostVector tt = travel_time_costs(graph);
  sol.total_travel_time = static_cast<std::int64_t>(evaluate_cost(tt, flow.arc_flow));

  sol.throughput_curve.assign(static_cast<std::size_t>(graph.horizon.steps) + 1, 0);
  for (std::size_t k = 0; k < graph.sink_arcs.size(); ++k) {
    sol.throughput_curve[static_cast<std::size_t>(graph.arcs[graph.sink_arcs[k]].t)] += sol.sink_flow[k];
  }
  for (std::size_t t = 1; t < sol.throughput_curve.size(); ++t) {
    sol.throughput_curve[t] += sol.throughput_curve[t - 1];
  }
  sol.raw_schedule = infer_signal_schedule(graph, flow.arc_flow);
  sol.schedule = sol.raw_schedule;
  sol.flow = std::move(flow);
  return sol;
}

OptimalSolution optimal_control(const SuperGraph& graph) {
  const CostVector cost = travel_time_costs(graph);
  return describe_solution(graph, solve_min_cost(graph, cost));
}

OptimalSolution minimize_switches(const OptimalSolution& solution, const SuperGraph& graph,
                                  int max_rounds) {
  const Topology& topo = *graph.topology;
  const auto arcs = connector_arc_index(graph);
  const CostVector primary = travel_time_costs(graph);

  OptimalSolution best = solution;
  best.schedule = fill_idle_steps(solution.raw_schedule);
  std::int64_t best_switches = switch_count(best.schedule);
  if (topo.gadgets.empty() || best_switches == 0) return best;

  FlowSession session(graph);
  for (int round = 0; round < max_rounds; ++round) {
    // Reward every inbound unit that repeats the sender granted one step earlier.
    CostVector sticky(graph.arcs.size(), 0);
    for (std::size_t g = 0; g < topo.gadgets.size(); ++g) {
      const auto& per_step = best.schedule.grants[g];
      for (std::size_t t = 1; t < per_step.size(); ++t) {
        for (const Movement& m : per_step[t - 1]) {
          for (std::size_t c : topo.gadgets[g].inbound) {
            if (topo.object_id(topo.connectors[c].from) == m.from_cell) sticky[arcs[c][t]] = -1;
          }
        }
      }
    }
    IntegralFlow candidate =
        session.solve_lexicographic(primary, sticky, cost_spread_bound(graph, sticky));
    OptimalSolution next = describe_solution(graph, std::move(candidate));
    if (next.total_travel_time != solution.total_travel_time) {
      throw InvariantError("switch minimization changed the travel time");
    }
    next.raw_schedule = solution.raw_schedule;
    next.schedule = fill_idle_steps(next.schedule);
    const std::int64_t switches = switch_count(next.schedule);
    if (switches >= best_switches) break;
    best = std::move(next);
    best_switches = switches;
  }
  return best;
}

}  // namespace sigtamp
