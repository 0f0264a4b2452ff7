#pragma once

// Exhaustive reference computations for tiny super-graphs. Nodes are visited
// in topological order and each node's inflow is split over its out-arcs in
// every capacity-respecting way. Sub-results are memoized on the vector of
// flows already pushed ahead, so the search is exact but never touches the
// simplex code.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sigtamp/adversary.hpp"
#include "sigtamp/flow_solver.hpp"
#include "sigtamp/supergraph.hpp"

namespace sigtamp {

struct OracleLimits {
  std::size_t max_states = 2'000'000;
};

// Minimum of cᵀx over all feasible integral flows; empty when none exists.
// Throws InputError when the instance exceeds the state budget.
std::optional<Int128> brute_force_min_cost(const SuperGraph& graph, std::span<const std::int64_t> cost,
                                           const OracleLimits& limits = {});

// Every nondominated (Z1, Z2) value over all feasible integral flows.
std::vector<ObjectivePair> brute_force_nondominated(const SuperGraph& graph,
                                                    const ObjectiveEncoding& encoding,
                                                    const OracleLimits& limits = {});

// Extreme supported points of the set above.
std::vector<ObjectivePair> brute_force_frontier(const SuperGraph& graph, const ObjectiveEncoding& encoding,
                                                const OracleLimits& limits = {});

// Plain depth-first enumeration of every feasible integral flow. The visitor
// returns false to stop early. Throws InputError after `max_flows` flows.
std::size_t enumerate_flows(const SuperGraph& graph,
                            const std::function<bool(std::span<const std::int32_t>)>& visit,
                            std::size_t max_flows = 1'000'000);

}  // namespace sigtamp
