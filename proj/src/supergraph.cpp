#include "sigtamp/supergraph.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <unordered_map>

#include "sigtamp/errors.hpp"

namespace sigtamp {

std::int64_t DemandProfile::total() const {
  std::int64_t total = 0;
  for (const Entry& e : entries) {
    for (std::int32_t a : e.arrivals) total += a;
  }
  return total;
}

std::string to_string(ArcClass cls) {
  switch (cls) {
    case ArcClass::occupancy: return "occupancy";
    case ArcClass::slack: return "slack";
    case ArcClass::connector: return "connector";
    case ArcClass::source: return "source";
    case ArcClass::sink: return "sink";
    case ArcClass::residual: return "residual";
  }
  return "occupancy";
}

std::vector<std::int32_t> SuperGraph::capacities() const {
  std::vector<std::int32_t> caps(arcs.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) caps[a] = arcs[a].capacity;
  return caps;
}

std::string SuperGraph::node_name(NodeId node) const {
  if (node == source) return "R";
  if (node == sink) return "S";
  const SuperNode& n = nodes.at(static_cast<std::size_t>(node));
  const std::string t = std::to_string(n.t);
  switch (n.kind) {
    case SuperNode::Kind::cell_entry: return "m:" + topology->cells[n.object].id + ":" + t;
    case SuperNode::Kind::cell_exit: return "n:" + topology->cells[n.object].id + ":" + t;
    case SuperNode::Kind::transshipment: return "w:" + topology->object_id(n.object) + ":" + t;
    default: return "?";
  }
}

std::string SuperGraph::object_name(const SuperArc& arc) const {
  if (arc.cls == ArcClass::connector) return topology->connectors[arc.object].id;
  return topology->cells[arc.object].id;
}

bool SuperGraph::in_non_sink_set(std::size_t arc) const { return arcs[arc].head != sink; }

std::vector<std::int32_t> discretize_rate(double rate_veh_per_hr, const Horizon& horizon) {
  if (!(rate_veh_per_hr >= 0.0)) throw InputError("demand rate must be >= 0");
  std::vector<std::int32_t> arrivals(static_cast<std::size_t>(std::max(horizon.steps, 0)));
  const long double per_step = static_cast<long double>(rate_veh_per_hr) * horizon.delta_tau / 3600.0L;
  auto cumulative = [&](int steps) {
    return static_cast<std::int64_t>(std::floor(per_step * steps + 1e-9L));
  };
  for (int t = 0; t < horizon.steps; ++t) {
    arrivals[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(cumulative(t + 1) - cumulative(t));
  }
  return arrivals;
}

namespace {

bool has_holdover(const Cell& cell, SinkPolicy policy) {
  return cell.kind != CellKind::sink || policy == SinkPolicy::occupancy;
}

}  // namespace

std::size_t expected_arc_count(const Topology& topology, const Horizon& horizon, SinkPolicy policy) {
  std::size_t holdover = 0;
  std::size_t sources = 0;
  std::size_t sinks = 0;
  for (const Cell& c : topology.cells) {
    if (has_holdover(c, policy)) ++holdover;
    if (c.kind == CellKind::source) ++sources;
    if (c.kind == CellKind::sink) ++sinks;
  }
  const std::size_t steps = static_cast<std::size_t>(horizon.steps);
  return steps * (2 * holdover + topology.connectors.size()) + steps * sources + steps * sinks + holdover;
}

SuperGraph expand(const RoadNetwork& network, const Horizon& horizon, const DemandProfile& demand,
                  SinkPolicy sink_policy) {
  if (horizon.steps < 1) throw InputError("horizon must have at least one step");
  if (!(horizon.delta_tau > 0.0)) throw InputError("delta_tau must be positive");

  auto topology = std::make_shared<const Topology>(materialize(network));
  const Topology& topo = *topology;
  const std::size_t cell_count = topo.cells.size();
  const int steps = horizon.steps;

  // Demand per source cell.
  std::vector<const std::vector<std::int32_t>*> arrivals(cell_count, nullptr);
  for (const DemandProfile::Entry& e : demand.entries) {
    auto idx = network.find_cell(e.cell);
    if (!idx) throw InputError("demand references unknown cell '" + e.cell + "'");
    if (topo.cells[*idx].kind != CellKind::source) {
      throw InputError("demand placed on non-source cell '" + e.cell + "'");
    }
    if (arrivals[*idx]) throw InputError("demand for cell '" + e.cell + "' given twice");
    if (e.arrivals.size() != static_cast<std::size_t>(steps)) {
      throw InputError("demand for cell '" + e.cell + "' must list one count per step");
    }
    for (std::int32_t a : e.arrivals) {
      if (a < 0) throw InputError("demand for cell '" + e.cell + "' is negative");
    }
    arrivals[*idx] = &e.arrivals;
  }
  const std::int64_t total = demand.total();
  if (total > std::numeric_limits<std::int32_t>::max() / 4) {
    throw InputError("total demand too large for 32-bit arc flows");
  }
  const std::int32_t big = static_cast<std::int32_t>(total);

  SuperGraph g;
  g.topology = topology;
  g.horizon = horizon;
  g.sink_policy = sink_policy;
  g.total_demand = total;

  auto add_node = [&](SuperNode::Kind kind, std::uint32_t object, std::int32_t t) {
    g.nodes.push_back(SuperNode{kind, object, t});
    return static_cast<NodeId>(g.nodes.size() - 1);
  };
  auto add_arc = [&](NodeId tail, NodeId head, std::int32_t cap, ArcClass cls, std::size_t object,
                     int t) {
    g.arcs.push_back(SuperArc{tail, head, cap, cls, static_cast<std::uint32_t>(object), t});
    return g.arcs.size() - 1;
  };

  const std::vector<std::size_t> node_order = topo.node_order();
  const std::size_t object_count = topo.object_count();

  g.source = add_node(SuperNode::Kind::super_source, 0, 0);
  // entry[t][i], exit[t][i], node_copy[t][object]
  std::vector<std::vector<NodeId>> entry(static_cast<std::size_t>(steps) + 1,
                                         std::vector<NodeId>(cell_count, kNoNode));
  std::vector<std::vector<NodeId>> exit(static_cast<std::size_t>(steps),
                                        std::vector<NodeId>(cell_count, kNoNode));
  std::vector<std::vector<NodeId>> copy(static_cast<std::size_t>(steps),
                                        std::vector<NodeId>(object_count, kNoNode));
  for (int t = 0; t < steps; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    for (std::size_t i = 0; i < cell_count; ++i) {
      entry[ts][i] = add_node(SuperNode::Kind::cell_entry, static_cast<std::uint32_t>(i), t);
    }
    for (std::size_t i = 0; i < cell_count; ++i) {
      if (has_holdover(topo.cells[i], sink_policy)) {
        exit[ts][i] = add_node(SuperNode::Kind::cell_exit, static_cast<std::uint32_t>(i), t);
      }
    }
    for (std::size_t n : node_order) {
      const std::size_t object = cell_count + n;
      copy[ts][object] = add_node(SuperNode::Kind::transshipment, static_cast<std::uint32_t>(object), t);
    }
  }
  for (std::size_t i = 0; i < cell_count; ++i) {
    entry[static_cast<std::size_t>(steps)][i] =
        add_node(SuperNode::Kind::cell_entry, static_cast<std::uint32_t>(i), steps);
  }
  g.sink = add_node(SuperNode::Kind::super_sink, 0, steps + 1);

  auto bound = [&](const Cell& c) { return c.kind == CellKind::source ? big : c.max_occupancy; };
  auto sink_capacity = [&](const Cell& c) {
    return sink_policy == SinkPolicy::uncapacitated ? big : c.max_occupancy;
  };
  auto add_sink_arcs = [&](int t) {
    for (std::size_t i = 0; i < cell_count; ++i) {
      if (topo.cells[i].kind != CellKind::sink) continue;
      g.sink_arcs.push_back(add_arc(entry[static_cast<std::size_t>(t)][i], g.sink,
                                    sink_capacity(topo.cells[i]), ArcClass::sink, i, t));
    }
  };

  for (int t = 0; t < steps; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    for (std::size_t i = 0; i < cell_count; ++i) {
      if (topo.cells[i].kind != CellKind::source) continue;
      const std::int32_t d = arrivals[i] ? (*arrivals[i])[ts] : 0;
      add_arc(g.source, entry[ts][i], d, ArcClass::source, i, t);
    }
    if (t > 0) add_sink_arcs(t);
    for (std::size_t i = 0; i < cell_count; ++i) {
      const Cell& c = topo.cells[i];
      if (!has_holdover(c, sink_policy)) continue;
      add_arc(entry[ts][i], exit[ts][i], bound(c), ArcClass::occupancy, i, t);
      add_arc(exit[ts][i], entry[ts + 1][i], bound(c), ArcClass::slack, i, t);
    }
    for (std::size_t ci = 0; ci < topo.connectors.size(); ++ci) {
      const TopologyConnector& c = topo.connectors[ci];
      const NodeId tail = topo.is_cell(c.from) ? exit[ts][c.from] : copy[ts][c.from];
      const NodeId head = topo.is_cell(c.to) ? entry[ts + 1][c.to] : copy[ts][c.to];
      if (tail == kNoNode || head == kNoNode) {
        throw InvariantError("connector '" + c.id + "' has no super-graph endpoint");
      }
      const std::size_t a = add_arc(tail, head, c.capacity, ArcClass::connector, ci, t);
      if (c.role == ConnectorRole::gadget_core) g.conflict_arcs.push_back(a);
    }
  }
  add_sink_arcs(steps);
  for (std::size_t i = 0; i < cell_count; ++i) {
    const Cell& c = topo.cells[i];
    if (!has_holdover(c, sink_policy)) continue;
    g.residual_arcs.push_back(add_arc(entry[static_cast<std::size_t>(steps)][i], g.sink, bound(c),
                                      ArcClass::residual, i, steps));
  }

  g.supply.assign(g.nodes.size(), 0);
  g.supply[static_cast<std::size_t>(g.source)] = total;
  g.supply[static_cast<std::size_t>(g.sink)] = -total;
  return g;
}

bool incidence_check(const SuperGraph& graph) {
  const auto n = static_cast<NodeId>(graph.nodes.size());
  for (const SuperArc& a : graph.arcs) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n || a.tail == a.head) return false;
  }
  if (graph.supply.size() != graph.nodes.size()) return false;
  std::int64_t sum = 0;
  for (std::int64_t b : graph.supply) sum += b;
  if (sum != 0) return false;
  if (graph.source < 0 || graph.sink < 0 || graph.source >= n || graph.sink >= n) return false;
  for (std::size_t v = 0; v < graph.supply.size(); ++v) {
    const auto id = static_cast<NodeId>(v);
    const std::int64_t expected =
        id == graph.source ? graph.total_demand : id == graph.sink ? -graph.total_demand : 0;
    if (graph.supply[v] != expected) return false;
  }
  return true;
}

std::vector<ArcKey> conflict_arcs(const SuperGraph& graph) {
  std::vector<ArcKey> keys;
  keys.reserve(graph.conflict_arcs.size());
  for (std::size_t a : graph.conflict_arcs) {
    const SuperArc& arc = graph.arcs[a];
    keys.push_back(ArcKey{arc.cls, graph.object_name(arc), arc.t, a});
  }
  return keys;
}

std::vector<NodeId> to_dag_order(const SuperGraph& graph) {
  const std::size_t n = graph.nodes.size();
  std::vector<std::int32_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    const SuperArc& arc = graph.arcs[a];
    if (arc.tail < 0 || arc.head < 0 || static_cast<std::size_t>(arc.tail) >= n ||
        static_cast<std::size_t>(arc.head) >= n) {
      throw InvariantError("arc " + std::to_string(a) + " has a dangling endpoint");
    }
    ++indegree[static_cast<std::size_t>(arc.head)];
    out[static_cast<std::size_t>(arc.tail)].push_back(a);
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(static_cast<NodeId>(v));
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t a : out[static_cast<std::size_t>(v)]) {
      const NodeId h = graph.arcs[a].head;
      if (--indegree[static_cast<std::size_t>(h)] == 0) ready.push(h);
    }
  }
  if (order.size() != n) throw InvariantError("super-graph contains a cycle");
  return order;
}

void write_edge_list(std::ostream& out, const SuperGraph& graph, std::span<const std::int32_t> flow) {
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    const SuperArc& arc = graph.arcs[a];
    out << graph.node_name(arc.tail) << ' ' << graph.node_name(arc.head) << ' ' << arc.capacity << ' '
        << to_string(arc.cls) << ' ' << graph.object_name(arc) << ' ' << arc.t;
    if (!flow.empty()) out << ' ' << flow[a];
    out << '\n';
  }
}

}  // namespace sigtamp
