#include "sigtamp/network.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "sigtamp/errors.hpp"

namespace sigtamp {

std::optional<std::size_t> RoadNetwork::find_cell(const std::string& id) const {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> RoadNetwork::find_node(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  return std::nullopt;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i].code << ": " << violations[i].message;
  }
  return out.str();
}

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::ordinary: return "ordinary";
    case CellKind::source: return "source";
    case CellKind::sink: return "sink";
  }
  return "ordinary";
}

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::diverge: return "diverge";
    case NodeKind::merge: return "merge";
    case NodeKind::conflict_upper: return "conflict_upper";
    case NodeKind::conflict_lower: return "conflict_lower";
  }
  return "diverge";
}

CellKind parse_cell_kind(const std::string& text) {
  if (text == "ordinary") return CellKind::ordinary;
  if (text == "source") return CellKind::source;
  if (text == "sink") return CellKind::sink;
  throw InputError("unknown cell kind '" + text + "'");
}

NodeKind parse_node_kind(const std::string& text) {
  if (text == "diverge") return NodeKind::diverge;
  if (text == "merge") return NodeKind::merge;
  if (text == "conflict_upper") return NodeKind::conflict_upper;
  if (text == "conflict_lower") return NodeKind::conflict_lower;
  throw InputError("unknown node kind '" + text + "'");
}

// ---------------------------------------------------------------------------
// Gadgets

std::vector<Connector> GadgetEmission::all_connectors() const {
  std::vector<Connector> out;
  if (plain) out.push_back(*plain);
  out.insert(out.end(), inbound.begin(), inbound.end());
  if (core) out.push_back(*core);
  out.insert(out.end(), outbound.begin(), outbound.end());
  return out;
}

GadgetEmission build_conflict_gadget(const ConflictGroup& group, const RoadNetwork& network) {
  if (group.movements.empty()) {
    throw InputError("conflict group '" + group.id + "' has no movements");
  }
  std::set<Movement> seen;
  for (const Movement& m : group.movements) {
    if (!seen.insert(m).second) {
      throw InputError("conflict group '" + group.id + "' repeats movement " + m.from_cell + "->" +
                       m.to_cell);
    }
  }
  auto cell_of = [&](const std::string& id) -> const Cell& {
    auto idx = network.find_cell(id);
    if (!idx) throw InputError("conflict group '" + group.id + "' references unknown cell '" + id + "'");
    return network.cells[*idx];
  };

  GadgetEmission emission;
  if (group.degenerate()) {
    const Movement& m = group.movements.front();
    const Cell& from = cell_of(m.from_cell);
    const Cell& to = cell_of(m.to_cell);
    emission.degenerate = true;
    emission.plain = Connector{group.id, m.from_cell, m.to_cell,
                               std::min(from.flow_capacity, to.flow_capacity), 0};
    return emission;
  }

  const int capacity = group.effective_capacity();
  const std::string u_id = group.id + "/u";
  const std::string v_id = group.id + "/v";
  emission.upper = TransshipmentNode{u_id, NodeKind::conflict_upper};
  emission.lower = TransshipmentNode{v_id, NodeKind::conflict_lower};

  std::vector<std::string> senders;
  std::vector<std::string> receivers;
  for (const Movement& m : group.movements) {
    if (std::find(senders.begin(), senders.end(), m.from_cell) == senders.end()) {
      senders.push_back(m.from_cell);
    }
    if (std::find(receivers.begin(), receivers.end(), m.to_cell) == receivers.end()) {
      receivers.push_back(m.to_cell);
    }
  }
  for (const std::string& sender : senders) {
    const Cell& cell = cell_of(sender);
    for (int lane = 0; lane < cell.lanes; ++lane) {
      emission.inbound.push_back(Connector{group.id + "/in/" + sender + "#" + std::to_string(lane),
                                           sender, u_id, 1, lane});
    }
  }
  emission.core = Connector{group.id + "/core", u_id, v_id, capacity, 0};
  for (const std::string& receiver : receivers) {
    const Cell& cell = cell_of(receiver);
    emission.outbound.push_back(Connector{group.id + "/out/" + receiver, v_id, receiver,
                                          std::min(cell.flow_capacity, capacity), 0});
  }
  return emission;
}

// ---------------------------------------------------------------------------
// Topology

const std::string& Topology::object_id(std::size_t object) const {
  return is_cell(object) ? cells[object].id : nodes[object - cells.size()].id;
}

std::vector<std::size_t> Topology::node_order() const {
  const std::size_t base = cells.size();
  std::vector<int> indegree(nodes.size(), 0);
  for (const TopologyConnector& c : connectors) {
    if (!is_cell(c.from) && !is_cell(c.to)) ++indegree[c.to - base];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(nodes.size());
  while (!ready.empty()) {
    const std::size_t n = ready.top();
    ready.pop();
    order.push_back(n);
    for (std::size_t ci : outgoing[base + n]) {
      const TopologyConnector& c = connectors[ci];
      if (!is_cell(c.to) && --indegree[c.to - base] == 0) ready.push(c.to - base);
    }
  }
  if (order.size() != nodes.size()) {
    throw InputError("transshipment nodes form a cycle");
  }
  return order;
}

namespace {

Topology build_topology(const RoadNetwork& network) {
  Topology topo;
  topo.cells = network.cells;
  topo.nodes = network.nodes;

  std::vector<GadgetEmission> emissions;
  emissions.reserve(network.conflict_groups.size());
  for (const ConflictGroup& group : network.conflict_groups) {
    emissions.push_back(build_conflict_gadget(group, network));
    const GadgetEmission& e = emissions.back();
    if (!e.degenerate) {
      topo.nodes.push_back(*e.upper);
      topo.nodes.push_back(*e.lower);
    }
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < topo.cells.size(); ++i) index.emplace(topo.cells[i].id, i);
  for (std::size_t i = 0; i < topo.nodes.size(); ++i) {
    index.emplace(topo.nodes[i].id, topo.cells.size() + i);
  }
  auto resolve = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw InputError("connector endpoint '" + id + "' does not exist");
    return it->second;
  };
  auto add = [&](const Connector& c, ConnectorRole role, std::optional<std::size_t> group) {
    topo.connectors.push_back(
        TopologyConnector{c.id, resolve(c.from), resolve(c.to), c.capacity, role, group});
    return topo.connectors.size() - 1;
  };

  for (const Connector& c : network.connectors) add(c, ConnectorRole::plain, std::nullopt);
  for (std::size_t g = 0; g < emissions.size(); ++g) {
    const GadgetEmission& e = emissions[g];
    if (e.degenerate) {
      add(*e.plain, ConnectorRole::plain, g);
      continue;
    }
    GadgetRef ref;
    ref.group = g;
    ref.movements = network.conflict_groups[g].movements;
    ref.upper = resolve(e.upper->id);
    ref.lower = resolve(e.lower->id);
    for (const Connector& c : e.inbound) ref.inbound.push_back(add(c, ConnectorRole::gadget_in, g));
    ref.core = add(*e.core, ConnectorRole::gadget_core, g);
    for (const Connector& c : e.outbound) {
      ref.outbound.push_back(add(c, ConnectorRole::gadget_out, g));
    }
    topo.gadgets.push_back(std::move(ref));
  }

  topo.outgoing.assign(topo.object_count(), {});
  topo.incoming.assign(topo.object_count(), {});
  for (std::size_t i = 0; i < topo.connectors.size(); ++i) {
    topo.outgoing[topo.connectors[i].from].push_back(i);
    topo.incoming[topo.connectors[i].to].push_back(i);
  }
  return topo;
}

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](unsigned char ch) { return std::isspace(ch) || ch == ','; });
}

}  // namespace

Topology materialize(const RoadNetwork& network) {
  require_valid(network);
  return build_topology(network);
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const RoadNetwork& network) {
  ValidationReport report;
  auto fail = [&](std::string code, std::string message) {
    report.violations.push_back(Violation{std::move(code), std::move(message)});
  };

  if (network.cells.empty()) fail("empty_network", "network has no cells");
  const bool has_source = std::any_of(network.cells.begin(), network.cells.end(),
                                      [](const Cell& c) { return c.kind == CellKind::source; });
  const bool has_sink = std::any_of(network.cells.begin(), network.cells.end(),
                                    [](const Cell& c) { return c.kind == CellKind::sink; });
  if (!has_source) fail("no_source", "network has no source cell");
  if (!has_sink) fail("no_sink", "network has no sink cell");

  // Identifiers share one namespace across cells and nodes, including the
  // nodes that gadgets will emit.
  std::unordered_map<std::string, char> objects;  // id -> 'c' cell, 'n' node
  auto claim = [&](const std::string& id, char kind, const char* what) {
    if (!valid_id(id)) {
      fail("bad_id", std::string(what) + " id '" + id + "' is empty or contains whitespace/commas");
      return;
    }
    if (!objects.emplace(id, kind).second) fail("duplicate_id", "id '" + id + "' is used twice");
  };
  for (const Cell& c : network.cells) claim(c.id, 'c', "cell");
  for (const TransshipmentNode& n : network.nodes) {
    claim(n.id, 'n', "node");
    if (n.kind == NodeKind::conflict_upper || n.kind == NodeKind::conflict_lower) {
      fail("reserved_node_kind", "node '" + n.id + "' declares a gadget kind; gadgets are emitted from conflict groups");
    }
  }
  for (const ConflictGroup& g : network.conflict_groups) {
    if (!valid_id(g.id)) fail("bad_id", "conflict group id '" + g.id + "' is invalid");
    if (!g.degenerate()) {
      claim(g.id + "/u", 'n', "gadget node");
      claim(g.id + "/v", 'n', "gadget node");
    }
  }
  {
    std::unordered_set<std::string> ids;
    for (const Connector& c : network.connectors) {
      if (!valid_id(c.id)) fail("bad_id", "connector id '" + c.id + "' is invalid");
      if (!ids.insert(c.id).second) fail("duplicate_id", "connector id '" + c.id + "' is used twice");
    }
    std::unordered_set<std::string> group_ids;
    for (const ConflictGroup& g : network.conflict_groups) {
      if (!group_ids.insert(g.id).second) fail("duplicate_id", "conflict group id '" + g.id + "' is used twice");
    }
  }

  auto cell_at = [&](const std::string& id) -> const Cell* {
    auto idx = network.find_cell(id);
    return idx ? &network.cells[*idx] : nullptr;
  };

  for (const Cell& c : network.cells) {
    if (c.max_occupancy < 1 || c.flow_capacity < 1 || c.lanes < 1) {
      fail("cell_parameters", "cell '" + c.id + "' needs N >= 1, Q >= 1 and lanes >= 1");
    } else if (c.max_occupancy < c.flow_capacity) {
      fail("occupancy_below_capacity", "cell '" + c.id + "' has N < Q");
    }
  }

  std::map<std::string, int> out_degree;  // cells: plain connectors + group membership
  std::map<std::string, int> in_degree;
  std::map<std::string, int> node_in;
  std::map<std::string, int> node_out;
  std::set<std::tuple<std::string, std::string, int>> pairs;
  for (const Connector& c : network.connectors) {
    const bool from_known = objects.count(c.from) != 0;
    const bool to_known = objects.count(c.to) != 0;
    if (!from_known || !to_known) {
      fail("dangling_connector", "connector '" + c.id + "' references a missing endpoint");
      continue;
    }
    if (c.from == c.to) fail("self_loop", "connector '" + c.id + "' starts and ends at '" + c.from + "'");
    if (!pairs.emplace(c.from, c.to, c.lane).second) {
      fail("duplicate_connector", "connector (" + c.from + ", " + c.to + ") is declared twice");
    }
    const Cell* from = cell_at(c.from);
    const Cell* to = cell_at(c.to);
    if (c.capacity < 1) {
      fail("connector_capacity", "connector '" + c.id + "' has capacity < 1");
    } else if (from && to && c.capacity != std::min(from->flow_capacity, to->flow_capacity)) {
      fail("connector_capacity", "connector '" + c.id + "' capacity differs from min(Q_from, Q_to)");
    }
    if (from) {
      ++out_degree[c.from];
      if (from->kind == CellKind::sink) fail("sink_outbound", "sink cell '" + c.from + "' has an outbound connector");
    } else {
      ++node_out[c.from];
    }
    if (to) {
      ++in_degree[c.to];
      if (to->kind == CellKind::source) fail("source_inbound", "source cell '" + c.to + "' has an inbound connector");
    } else {
      ++node_in[c.to];
    }
  }

  std::map<std::string, std::string> sender_group;
  for (const ConflictGroup& g : network.conflict_groups) {
    if (g.movements.empty()) {
      fail("empty_group", "conflict group '" + g.id + "' has no movements");
      continue;
    }
    if (g.gadget_capacity && *g.gadget_capacity < 1) {
      fail("gadget_capacity", "conflict group '" + g.id + "' has gadget capacity < 1");
    }
    std::set<Movement> seen;
    std::set<std::string> senders;
    std::set<std::string> receivers;
    for (const Movement& m : g.movements) {
      if (!seen.insert(m).second) {
        fail("duplicate_movement", "conflict group '" + g.id + "' repeats " + m.from_cell + "->" + m.to_cell);
      }
      const Cell* from = cell_at(m.from_cell);
      const Cell* to = cell_at(m.to_cell);
      if (!from || !to) {
        fail("dangling_movement", "conflict group '" + g.id + "' references a missing cell");
        continue;
      }
      if (from->kind == CellKind::sink || to->kind == CellKind::source) {
        fail("movement_kind", "conflict group '" + g.id + "' routes out of a sink or into a source");
      }
      if (m.from_cell == m.to_cell) fail("self_loop", "conflict group '" + g.id + "' has a movement into its own cell");
      senders.insert(m.from_cell);
      receivers.insert(m.to_cell);
    }
    for (const std::string& s : senders) {
      auto [it, inserted] = sender_group.emplace(s, g.id);
      if (!inserted) {
        fail("multiple_groups", "cell '" + s + "' sends into groups '" + it->second + "' and '" + g.id + "'");
      }
      ++out_degree[s];
    }
    for (const std::string& r : receivers) ++in_degree[r];
  }

  for (const Cell& c : network.cells) {
    const int out = out_degree.count(c.id) ? out_degree[c.id] : 0;
    const int in = in_degree.count(c.id) ? in_degree[c.id] : 0;
    if (c.kind != CellKind::sink && out != 1) {
      fail("cell_out_degree", "cell '" + c.id + "' has " + std::to_string(out) +
                                  " outbound connectors; exactly one is required");
    }
    if (c.kind != CellKind::source && in != 1) {
      fail("cell_in_degree", "cell '" + c.id + "' has " + std::to_string(in) +
                                 " inbound connectors; exactly one is required (use a merge node)");
    }
  }

  for (const TransshipmentNode& n : network.nodes) {
    const int in = node_in.count(n.id) ? node_in[n.id] : 0;
    const int out = node_out.count(n.id) ? node_out[n.id] : 0;
    if (n.kind == NodeKind::diverge && (in != 1 || out < 1)) {
      fail("diverge_degree", "diverge node '" + n.id + "' needs one inbound and at least one outbound connector");
    }
    if (n.kind == NodeKind::merge && (in < 1 || out != 1)) {
      fail("merge_degree", "merge node '" + n.id + "' needs at least one inbound and exactly one outbound connector");
    }
  }

  if (!report.ok()) return report;

  // Structural checks that need the emitted topology.
  Topology topo;
  try {
    topo = build_topology(network);
    (void)topo.node_order();
  } catch (const InputError& e) {
    fail("node_cycle", e.what());
    return report;
  }
  std::vector<char> reaches_sink(topo.object_count(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < topo.cells.size(); ++i) {
    if (topo.cells[i].kind == CellKind::sink) {
      reaches_sink[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const std::size_t o = queue.front();
    queue.pop_front();
    for (std::size_t ci : topo.incoming[o]) {
      const std::size_t prev = topo.connectors[ci].from;
      if (!reaches_sink[prev]) {
        reaches_sink[prev] = 1;
        queue.push_back(prev);
      }
    }
  }
  for (std::size_t i = 0; i < topo.cells.size(); ++i) {
    if (topo.cells[i].kind == CellKind::source && !reaches_sink[i]) {
      fail("unreachable_sink", "source cell '" + topo.cells[i].id + "' has no path to a sink");
    }
  }
  return report;
}

void require_valid(const RoadNetwork& network) {
  ValidationReport report = validate(network);
  if (!report.ok()) throw InputError("invalid network '" + network.name + "': " + report.summary());
}

// ---------------------------------------------------------------------------
// Degree statistics

DegreeSummary degree_statistics(const RoadNetwork& network) {
  DegreeSummary summary;
  std::vector<std::pair<int, int>> degrees;
  for (const ConflictGroup& g : network.conflict_groups) {
    std::set<std::string> senders;
    std::set<std::string> receivers;
    for (const Movement& m : g.movements) {
      senders.insert(m.from_cell);
      receivers.insert(m.to_cell);
    }
    degrees.emplace_back(static_cast<int>(senders.size()), static_cast<int>(receivers.size()));
  }
  for (const TransshipmentNode& n : network.nodes) {
    int in = 0;
    int out = 0;
    for (const Connector& c : network.connectors) {
      if (c.to == n.id) ++in;
      if (c.from == n.id) ++out;
    }
    degrees.emplace_back(in, out);
  }
  for (const auto& d : degrees) {
    ++summary.in_out_histogram[d];
    ++summary.total_histogram[d.first + d.second];
  }
  summary.intersections = static_cast<int>(degrees.size());
  summary.uniform = summary.in_out_histogram.size() <= 1;
  return summary;
}

}  // namespace sigtamp
