#pragma once

// Bi-objective signal tampering. Z1 is the change in total throughput
// relative to the optimal control (≤ 0 at optimum impact), Z2 the number of
// conflict-arc decisions that differ from it. Both are linear in the flow:
//
//   Z1(x) = Σ_{a∈sink arcs} x_a − Σ x_S*
//   Z2(x) = Σ_{x*_a=0} x_a + Σ_{x*_a=1} (1 − x_a)      (conflict arcs are binary)

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigtamp/control.hpp"
#include "sigtamp/flow_solver.hpp"
#include "sigtamp/supergraph.hpp"

namespace sigtamp {

struct ObjectiveEncoding {
  CostVector z1_costs;
  std::int64_t z1_constant = 0;  // −Σ x_S*
  CostVector z2_costs;
  std::int64_t z2_constant = 0;  // Σ x_conf*
  std::int64_t z1_range = 0;     // D·|T|, lexicographic bound when Z1 is secondary
  std::int64_t z2_range = 0;     // |A_conf|

  std::int64_t z1(std::span<const std::int32_t> flow) const;
  std::int64_t z2(std::span<const std::int32_t> flow) const;
};

// Throws InputError when a unit gadget carries a non-binary optimal flow.
ObjectiveEncoding encode_objectives(const OptimalSolution& opt, const SuperGraph& graph);

struct ObjectivePair {
  std::int64_t z1 = 0;
  std::int64_t z2 = 0;

  bool operator==(const ObjectivePair&) const = default;
  auto operator<=>(const ObjectivePair&) const = default;
};

struct ParetoPoint {
  std::int64_t z1 = 0;
  std::int64_t z2 = 0;
  std::size_t witness_id = 0;               // order of discovery
  std::vector<std::int32_t> sink_flow;      // x_S of the witness
  std::vector<std::int32_t> conflict_flow;  // x_conf of the witness
  std::optional<IntegralFlow> witness;      // full flow, when kept
  std::optional<SignalSchedule> schedule;   // kept with the witness
};

struct Segment {
  std::size_t left = 0;   // witness ids; left has the smaller z2
  std::size_t right = 0;
  std::int64_t w1 = 0;    // |Δz2|
  std::int64_t w2 = 0;    // |Δz1|
};

struct ProvenanceEntry {
  enum class Kind { endpoint, segment };
  Kind kind = Kind::segment;
  Segment segment;                 // unused for endpoints
  ObjectivePair candidate;
  std::size_t candidate_id = 0;    // witness id if accepted
  bool accepted = false;
  std::string note;
};

struct ParetoFrontier {
  std::vector<ParetoPoint> points;  // sorted by z2 ascending
  std::vector<ProvenanceEntry> provenance;
  std::vector<Segment> final_segments;
  ObjectiveEncoding encoding;
  std::size_t solves = 0;

  std::vector<ObjectivePair> pairs() const;
};

struct FrontierOptions {
  bool keep_witnesses = true;
};

ParetoFrontier pareto_frontier(const SuperGraph& graph, const OptimalSolution& opt,
                               const FrontierOptions& options = {});

// Lexicographic minimum of Z1 then Z2: the maximum-impact end of the frontier.
ParetoPoint max_impact_point(const SuperGraph& graph, const OptimalSolution& opt,
                             const FrontierOptions& options = {});

struct AttackEvaluation {
  std::int64_t z1 = 0;
  std::int64_t z2 = 0;
  SignalSchedule schedule;
};

// Recomputes both objectives from the raw flow. Throws InputError when the
// witness is not a feasible flow on `graph`.
AttackEvaluation evaluate_attack(std::span<const std::int32_t> witness, const OptimalSolution& opt,
                                 const SuperGraph& graph);

struct AuditReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Sortedness, strict nondomination, strict convex position and, where
// witnesses are stored, agreement between stored and recomputed objectives.
AuditReport frontier_audit(const ParetoFrontier& frontier);

// Re-solves each final segment's weighted objective from scratch and checks
// that both of its endpoints attain the optimum exactly.
AuditReport support_check(const ParetoFrontier& frontier, const SuperGraph& graph);

// Vertices of the lower-left convex hull of a point set: nondominated,
// strictly convex, sorted by z2 ascending.
std::vector<ObjectivePair> extreme_nondominated(std::vector<ObjectivePair> points);

}  // namespace sigtamp
