#pragma once

// Exact integral min-cost flow on super-graphs. Costs are 64-bit integers,
// objective values are accumulated in 128 bits. Lexicographic objectives are
// folded into one cost vector W·primary + secondary with W larger than any
// achievable spread of the secondary objective.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sigtamp/int128.hpp"
#include "sigtamp/network_simplex.hpp"
#include "sigtamp/supergraph.hpp"

namespace sigtamp {

using CostVector = std::vector<std::int64_t>;

struct IntegralFlow {
  std::vector<std::int32_t> arc_flow;
  Int128 objective = 0;  // cᵀx under the cost vector it was solved for

  bool operator==(const IntegralFlow&) const = default;
};

FlowProblem to_flow_problem(const SuperGraph& graph);

IntegralFlow solve_min_cost(const SuperGraph& graph, std::span<const std::int64_t> cost);
IntegralFlow solve_min_cost(const FlowProblem& problem, std::span<const std::int64_t> cost);

// W = bound_secondary_range + 1; bound must cover max |secondaryᵀ(x − x′)|.
CostVector lexicographic_costs(std::span<const std::int64_t> primary,
                               std::span<const std::int64_t> secondary,
                               std::int64_t bound_secondary_range);
IntegralFlow solve_lexicographic(const SuperGraph& graph, std::span<const std::int64_t> primary,
                                 std::span<const std::int64_t> secondary,
                                 std::int64_t bound_secondary_range);

Int128 evaluate_cost(std::span<const std::int64_t> cost, std::span<const std::int32_t> flow);

struct FeasibilityReport {
  std::size_t bound_violations = 0;
  std::size_t conservation_violations = 0;
  bool size_mismatch = false;

  bool ok() const { return !size_mismatch && bound_violations == 0 && conservation_violations == 0; }
};

FeasibilityReport check_feasibility(const FlowProblem& problem, std::span<const std::int32_t> flow);
FeasibilityReport check_feasibility(const SuperGraph& graph, std::span<const std::int32_t> flow);

// Independent optimality certificate: Bellman-Ford potentials on the
// residual graph, then every residual arc must have reduced cost >= 0.
// Returns false for infeasible flows or when a negative residual cycle exists.
bool verify_optimality(const FlowProblem& problem, std::span<const std::int64_t> cost,
                       std::span<const std::int32_t> flow);
bool verify_optimality(const SuperGraph& graph, std::span<const std::int64_t> cost,
                       std::span<const std::int32_t> flow);

// Repeated solves on one graph with changing costs. Each solve restarts the
// simplex from the previous optimal basis; results are deterministic for a
// given sequence of cost vectors.
class FlowSession {
 public:
  explicit FlowSession(const SuperGraph& graph);

  IntegralFlow solve(std::span<const std::int64_t> cost);
  IntegralFlow solve_lexicographic(std::span<const std::int64_t> primary,
                                   std::span<const std::int64_t> secondary,
                                   std::int64_t bound_secondary_range);
  std::size_t solves() const { return solves_; }

 private:
  const SuperGraph* graph_;
  std::unique_ptr<NetworkSimplex> simplex_;
  std::size_t solves_ = 0;
};

}  // namespace sigtamp
