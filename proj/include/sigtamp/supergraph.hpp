#pragma once

// Time-expanded static flow graph. Per cell i and step t there are two
// nodes: the entry copy m(i,t) that collects arrivals, and the exit copy
// n(i,t) that splits the occupancy into departures and the slack that stays.
//
//   m(i,t) --x(i,t)--> n(i,t) --s(i,t)--> m(i,t+1)
//                      n(i,t) --y(i,j,t)--> m(j,t+1)   (or a node copy w(.,t))
//
// R feeds source cells, sink cells drain into S, and every cell's final
// layer m(i,|T|) drains into S through a residual arc.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigtamp/network.hpp"

namespace sigtamp {

struct Horizon {
  int steps = 1;            // |T|
  double delta_tau = 2.0;   // seconds per step
};

// Arrivals per source cell per step, keyed by the cell id.
struct DemandProfile {
  struct Entry {
    std::string cell;
    std::vector<std::int32_t> arrivals;  // one per step
  };
  std::vector<Entry> entries;

  std::int64_t total() const;
};

enum class SinkPolicy {
  uncapacitated,  // free boundary: every arrival at a sink cell leaves the network
  occupancy,      // sink arcs bounded by N of the sink cell; the cell keeps holdover arcs
};

enum class ArcClass : std::uint8_t { occupancy, slack, connector, source, sink, residual };

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct SuperArc {
  NodeId tail = kNoNode;
  NodeId head = kNoNode;
  std::int32_t capacity = 0;
  ArcClass cls = ArcClass::occupancy;
  std::uint32_t object = 0;  // cell index, or connector index for connector arcs
  std::int32_t t = 0;
};

struct SuperNode {
  enum class Kind : std::uint8_t { super_source, super_sink, cell_entry, cell_exit, transshipment };
  Kind kind = Kind::cell_entry;
  std::uint32_t object = 0;  // cell index or object index of the transshipment node
  std::int32_t t = 0;
};

struct ArcKey {
  ArcClass cls = ArcClass::occupancy;
  std::string object;
  std::int32_t t = 0;
  std::size_t arc = 0;  // index into SuperGraph::arcs

  bool operator==(const ArcKey&) const = default;
};

struct SuperGraph {
  std::shared_ptr<const Topology> topology;
  Horizon horizon;
  SinkPolicy sink_policy = SinkPolicy::uncapacitated;
  std::vector<SuperNode> nodes;
  std::vector<SuperArc> arcs;
  std::vector<std::int64_t> supply;  // b
  NodeId source = kNoNode;           // R
  NodeId sink = kNoNode;             // S
  std::int64_t total_demand = 0;     // D

  // Arc index lists by role, ascending.
  std::vector<std::size_t> sink_arcs;
  std::vector<std::size_t> conflict_arcs;
  std::vector<std::size_t> residual_arcs;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t arc_count() const { return arcs.size(); }
  std::vector<std::int32_t> capacities() const;
  std::string node_name(NodeId node) const;
  std::string object_name(const SuperArc& arc) const;
  bool in_non_sink_set(std::size_t arc) const;  // A_{V/S}: does not end in S
};

// Arrivals r veh/hr become integer counts by cumulative rounding:
// d(t) = floor((t+1)·r·Δτ/3600) − floor(t·r·Δτ/3600).
std::vector<std::int32_t> discretize_rate(double rate_veh_per_hr, const Horizon& horizon);

SuperGraph expand(const RoadNetwork& network, const Horizon& horizon, const DemandProfile& demand,
                  SinkPolicy sink_policy = SinkPolicy::uncapacitated);

// Closed-form arc count of expand(): |T|·(2·|C_h| + |L|) + |T|·|C_R| +
// |T|·|C_S| + |C_h|, where C_h are cells with holdover arcs and L the
// materialized connectors.
std::size_t expected_arc_count(const Topology& topology, const Horizon& horizon, SinkPolicy policy);

bool incidence_check(const SuperGraph& graph);

std::vector<ArcKey> conflict_arcs(const SuperGraph& graph);

// Kahn order with smallest-index tie-breaking. Throws InvariantError on a cycle.
std::vector<NodeId> to_dag_order(const SuperGraph& graph);

std::string to_string(ArcClass cls);

// One arc per line: `tail head capacity class object_id t`, plus a trailing
// flow column when `flow` is non-empty.
void write_edge_list(std::ostream& out, const SuperGraph& graph,
                     std::span<const std::int32_t> flow = {});

}  // namespace sigtamp
