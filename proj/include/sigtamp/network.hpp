#pragma once

// Physical road network: cells, connectors, transshipment nodes and the
// conflict groups that become (u, v) gadgets at intersections.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sigtamp {

enum class CellKind { ordinary, source, sink };

struct Cell {
  std::string id;
  CellKind kind = CellKind::ordinary;
  int max_occupancy = 5;  // N
  int flow_capacity = 1;  // Q, vehicles per step
  int lanes = 1;

  bool operator==(const Cell&) const = default;
};

struct Connector {
  std::string id;
  std::string from;
  std::string to;
  int capacity = 1;  // Q_ij
  int lane = 0;      // distinguishes parallel unit connectors of one approach

  bool operator==(const Connector&) const = default;
};

enum class NodeKind { diverge, merge, conflict_upper, conflict_lower };

struct TransshipmentNode {
  std::string id;
  NodeKind kind = NodeKind::diverge;

  bool operator==(const TransshipmentNode&) const = default;
};

struct Movement {
  std::string from_cell;
  std::string to_cell;

  bool operator==(const Movement&) const = default;
  auto operator<=>(const Movement&) const = default;
};

struct ConflictGroup {
  std::string id;
  std::vector<Movement> movements;
  // Unset means 1 for real gadgets; a single-movement group without an
  // explicit capacity collapses to a plain connector.
  std::optional<int> gadget_capacity;

  int effective_capacity() const { return gadget_capacity.value_or(1); }
  bool degenerate() const { return movements.size() < 2 && !gadget_capacity.has_value(); }

  bool operator==(const ConflictGroup&) const = default;
};

// Generator bookkeeping carried alongside the network; not used by the model.
struct NetworkMetadata {
  std::string generator;
  std::optional<std::uint64_t> seed;
  int link_count = 0;
  double average_link_length_m = 0.0;
  double area_km2 = 0.0;
  // Intersection positions in metres, keyed by conflict group / node id.
  std::map<std::string, std::pair<double, double>> positions;

  bool operator==(const NetworkMetadata&) const = default;
};

struct RoadNetwork {
  std::string name;
  std::vector<Cell> cells;
  std::vector<Connector> connectors;
  std::vector<TransshipmentNode> nodes;
  std::vector<ConflictGroup> conflict_groups;
  NetworkMetadata metadata;

  std::optional<std::size_t> find_cell(const std::string& id) const;
  std::optional<std::size_t> find_node(const std::string& id) const;

  bool operator==(const RoadNetwork&) const = default;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string code;  // stable machine-readable tag, e.g. "merge_degree"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const;
  std::string summary() const;
};

ValidationReport validate(const RoadNetwork& network);

// Throws InputError carrying the report summary when validation fails.
void require_valid(const RoadNetwork& network);

// ---------------------------------------------------------------------------
// Conflict gadgets

struct GadgetEmission {
  bool degenerate = false;  // true: a single plain connector, no u/v nodes
  std::optional<TransshipmentNode> upper;  // u
  std::optional<TransshipmentNode> lower;  // v
  std::vector<Connector> inbound;          // (i, u), one per sending lane
  std::optional<Connector> core;           // (u, v)
  std::vector<Connector> outbound;         // (v, j), one per receiving cell
  std::optional<Connector> plain;          // degenerate case only

  std::vector<Connector> all_connectors() const;
};

// Cells are looked up in `network` for lane counts and capacities.
GadgetEmission build_conflict_gadget(const ConflictGroup& group, const RoadNetwork& network);

// ---------------------------------------------------------------------------
// Materialized topology: the network with every gadget emitted and every
// object (cells first, then transshipment nodes) addressed by index.

enum class ConnectorRole { plain, gadget_in, gadget_core, gadget_out };

struct TopologyConnector {
  std::string id;
  std::size_t from = 0;  // object index
  std::size_t to = 0;
  int capacity = 1;
  ConnectorRole role = ConnectorRole::plain;
  std::optional<std::size_t> group;  // index into RoadNetwork::conflict_groups
};

struct GadgetRef {
  std::size_t group = 0;
  std::size_t upper = 0;  // object index of u
  std::size_t lower = 0;  // object index of v
  std::size_t core = 0;   // connector index of (u, v)
  std::vector<std::size_t> inbound;
  std::vector<std::size_t> outbound;
  std::vector<Movement> movements;  // as declared by the group
};

struct Topology {
  std::vector<Cell> cells;
  std::vector<TransshipmentNode> nodes;
  std::vector<TopologyConnector> connectors;
  std::vector<GadgetRef> gadgets;
  std::vector<std::vector<std::size_t>> outgoing;  // Γ⁺ as connector indices, per object
  std::vector<std::vector<std::size_t>> incoming;  // Γ⁻

  std::size_t object_count() const { return cells.size() + nodes.size(); }
  bool is_cell(std::size_t object) const { return object < cells.size(); }
  const std::string& object_id(std::size_t object) const;
  // Transshipment node indices (relative to `nodes`) in an order where every
  // node-to-node connector points forward. Throws InputError on a cycle.
  std::vector<std::size_t> node_order() const;
};

Topology materialize(const RoadNetwork& network);

// ---------------------------------------------------------------------------
// Degree statistics. Each conflict group and each declared transshipment
// node counts as one intersection; degrees count distinct adjacent cells or
// objects.

struct DegreeSummary {
  std::map<std::pair<int, int>, int> in_out_histogram;  // (in, out) -> count
  std::map<int, int> total_histogram;                    // in + out -> count
  int intersections = 0;
  bool uniform = true;
};

DegreeSummary degree_statistics(const RoadNetwork& network);

std::string to_string(CellKind kind);
std::string to_string(NodeKind kind);
CellKind parse_cell_kind(const std::string& text);
NodeKind parse_node_kind(const std::string& text);

}  // namespace sigtamp
