#include "sigtamp/adversary.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "sigtamp/errors.hpp"

namespace sigtamp {

std::int64_t ObjectiveEncoding::z1(std::span<const std::int32_t> flow) const {
  return static_cast<std::int64_t>(evaluate_cost(z1_costs, flow)) + z1_constant;
}

std::int64_t ObjectiveEncoding::z2(std::span<const std::int32_t> flow) const {
  return static_cast<std::int64_t>(evaluate_cost(z2_costs, flow)) + z2_constant;
}

ObjectiveEncoding encode_objectives(const OptimalSolution& opt, const SuperGraph& graph) {
  if (opt.flow.arc_flow.size() != graph.arcs.size()) {
    throw InputError("optimal solution was computed on a different super-graph");
  }
  ObjectiveEncoding enc;
  enc.z1_costs.assign(graph.arcs.size(), 0);
  enc.z2_costs.assign(graph.arcs.size(), 0);
  for (std::size_t a : graph.sink_arcs) {
    enc.z1_costs[a] = 1;
    enc.z1_constant -= opt.flow.arc_flow[a];
  }
  for (std::size_t a : graph.conflict_arcs) {
    const std::int32_t x = opt.flow.arc_flow[a];
    if (graph.arcs[a].capacity != 1) {
      throw InputError("conflict arc with capacity " + std::to_string(graph.arcs[a].capacity) +
                       " cannot be linearized; Z2 needs unit gadgets");
    }
    if (x != 0 && x != 1) throw InputError("optimal conflict flow is not binary");
    enc.z2_costs[a] = x == 0 ? 1 : -1;
    enc.z2_constant += x;
  }
  enc.z1_range = std::max<std::int64_t>(graph.total_demand * graph.horizon.steps, 1);
  enc.z2_range = std::max<std::int64_t>(static_cast<std::int64_t>(graph.conflict_arcs.size()), 1);
  return enc;
}

std::vector<ObjectivePair> ParetoFrontier::pairs() const {
  std::vector<ObjectivePair> out;
  out.reserve(points.size());
  for (const ParetoPoint& p : points) out.push_back({p.z1, p.z2});
  return out;
}

namespace {

Int128 weighted(const Segment& s, std::int64_t z1, std::int64_t z2) {
  return static_cast<Int128>(s.w1) * z1 + static_cast<Int128>(s.w2) * z2;
}

CostVector weighted_costs(const ObjectiveEncoding& enc, std::int64_t w1, std::int64_t w2) {
  CostVector c(enc.z1_costs.size());
  for (std::size_t a = 0; a < c.size(); ++a) {
    const Int128 v = static_cast<Int128>(w1) * enc.z1_costs[a] + static_cast<Int128>(w2) * enc.z2_costs[a];
    if (!fits_int64(v)) throw InvariantError("weighted objective overflows 64 bits");
    c[a] = static_cast<std::int64_t>(v);
  }
  return c;
}

ParetoPoint make_point(const SuperGraph& graph, const ObjectiveEncoding& enc, IntegralFlow flow,
                       std::size_t id, bool keep) {
  ParetoPoint p;
  p.z1 = enc.z1(flow.arc_flow);
  p.z2 = enc.z2(flow.arc_flow);
  p.witness_id = id;
  p.sink_flow = gather(flow.arc_flow, graph.sink_arcs);
  p.conflict_flow = gather(flow.arc_flow, graph.conflict_arcs);
  if (keep) {
    p.schedule = infer_signal_schedule(graph, flow.arc_flow);
    p.witness = std::move(flow);
  }
  return p;
}

Segment segment_between(const ParetoPoint& left, const ParetoPoint& right) {
  return Segment{left.witness_id, right.witness_id, std::abs(right.z2 - left.z2),
                 std::abs(right.z1 - left.z1)};
}

}  // namespace

ParetoPoint max_impact_point(const SuperGraph& graph, const OptimalSolution& opt,
                             const FrontierOptions& options) {
  const ObjectiveEncoding enc = encode_objectives(opt, graph);
  IntegralFlow flow = solve_lexicographic(graph, enc.z1_costs, enc.z2_costs, enc.z2_range);
  return make_point(graph, enc, std::move(flow), 0, options.keep_witnesses);
}

ParetoFrontier pareto_frontier(const SuperGraph& graph, const OptimalSolution& opt,
                               const FrontierOptions& options) {
  ParetoFrontier frontier;
  frontier.encoding = encode_objectives(opt, graph);
  const ObjectiveEncoding& enc = frontier.encoding;
  FlowSession session(graph);

  std::map<std::size_t, ParetoPoint> found;  // by witness id
  auto record = [&](IntegralFlow flow) -> ParetoPoint& {
    const std::size_t id = found.size();
    return found.emplace(id, make_point(graph, enc, std::move(flow), id, options.keep_witnesses))
        .first->second;
  };

  // Endpoints: most impact first, then least noticeability.
  ParetoPoint& impact = record(session.solve_lexicographic(enc.z1_costs, enc.z2_costs, enc.z2_range));
  frontier.provenance.push_back({ProvenanceEntry::Kind::endpoint, {}, {impact.z1, impact.z2},
                                 impact.witness_id, true, "lex-min Z1 then Z2"});
  IntegralFlow quiet_flow = session.solve_lexicographic(enc.z2_costs, enc.z1_costs, enc.z1_range);
  const ObjectivePair quiet{enc.z1(quiet_flow.arc_flow), enc.z2(quiet_flow.arc_flow)};
  const bool same = quiet == ObjectivePair{found.at(0).z1, found.at(0).z2};
  if (!same) record(std::move(quiet_flow));
  frontier.provenance.push_back({ProvenanceEntry::Kind::endpoint, {}, quiet, same ? std::size_t{0} : std::size_t{1}, !same,
                                 same ? "lex-min Z2 then Z1 coincides with the first endpoint"
                                      : "lex-min Z2 then Z1"});

  if (!same) {
    std::deque<Segment> pending{segment_between(found.at(1), found.at(0))};
    while (!pending.empty()) {
      const Segment seg = pending.front();
      pending.pop_front();
      const CostVector costs = weighted_costs(enc, seg.w1, seg.w2);
      IntegralFlow flow = session.solve_lexicographic(costs, enc.z1_costs, enc.z1_range);
      const ObjectivePair cand{enc.z1(flow.arc_flow), enc.z2(flow.arc_flow)};
      const ParetoPoint& left = found.at(seg.left);
      const Int128 line = weighted(seg, left.z1, left.z2);
      const Int128 value = weighted(seg, cand.z1, cand.z2);
      if (value > line) throw InvariantError("weighted solve is worse than a known point");
      if (value == line) {
        frontier.provenance.push_back(
            {ProvenanceEntry::Kind::segment, seg, cand, 0, false, "segment confirmed"});
        frontier.final_segments.push_back(seg);
        continue;
      }
      const ParetoPoint& added = record(std::move(flow));
      frontier.provenance.push_back(
          {ProvenanceEntry::Kind::segment, seg, cand, added.witness_id, true, "new extreme point"});
      pending.push_back(segment_between(found.at(seg.left), added));
      pending.push_back(segment_between(added, found.at(seg.right)));
    }
  }
  frontier.solves = session.solves();

  for (auto& [id, point] : found) frontier.points.push_back(std::move(point));
  std::sort(frontier.points.begin(), frontier.points.end(),
            [](const ParetoPoint& a, const ParetoPoint& b) { return a.z2 < b.z2; });
  return frontier;
}

AttackEvaluation evaluate_attack(std::span<const std::int32_t> witness, const OptimalSolution& opt,
                                 const SuperGraph& graph) {
  const FeasibilityReport feasible = check_feasibility(graph, witness);
  if (!feasible.ok()) throw InputError("attack witness is not a feasible flow");
  const ObjectiveEncoding enc = encode_objectives(opt, graph);
  std::int64_t z1 = 0;
  for (std::size_t k = 0; k < graph.sink_arcs.size(); ++k) {
    z1 += witness[graph.sink_arcs[k]] - opt.sink_flow[k];
  }
  std::int64_t z2 = 0;
  for (std::size_t k = 0; k < graph.conflict_arcs.size(); ++k) {
    z2 += std::abs(witness[graph.conflict_arcs[k]] - opt.conflict_flow[k]);
  }
  if (z1 != enc.z1(witness) || z2 != enc.z2(witness)) {
    throw InvariantError("objective encoding disagrees with the direct definition");
  }
  return AttackEvaluation{z1, z2, infer_signal_schedule(graph, witness)};
}

AuditReport frontier_audit(const ParetoFrontier& frontier) {
  AuditReport report;
  const auto& pts = frontier.points;
  auto flag = [&](std::string message) { report.violations.push_back(std::move(message)); };
  if (pts.empty()) flag("frontier has no points");
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const ParetoPoint& p = pts[k];
    const std::string where = "point " + std::to_string(k) + " (" + std::to_string(p.z1) + ", " +
                              std::to_string(p.z2) + ")";
    if (p.z2 < 0) flag(where + " has negative z2");
    if (k > 0) {
      const ParetoPoint& q = pts[k - 1];
      if (p.z2 <= q.z2) flag(where + " is not strictly after its predecessor in z2");
      if (p.z1 >= q.z1) flag(where + " is dominated by or equal to its predecessor");
    }
    if (k > 0 && k + 1 < pts.size()) {
      const ParetoPoint& a = pts[k - 1];
      const ParetoPoint& c = pts[k + 1];
      // Strictly below the chord from a to c, in (z2, z1) coordinates.
      const Int128 cross = static_cast<Int128>(p.z2 - a.z2) * (c.z1 - a.z1) -
                           static_cast<Int128>(p.z1 - a.z1) * (c.z2 - a.z2);
      if (cross <= 0) flag(where + " is not in strictly convex position");
    }
    if (!p.conflict_flow.empty() || !p.sink_flow.empty()) {
      std::int64_t z1 = frontier.encoding.z1_constant;
      for (std::int32_t x : p.sink_flow) z1 += x;
      if (z1 != p.z1) flag(where + " sink flows give z1 = " + std::to_string(z1));
    }
    if (p.witness) {
      if (frontier.encoding.z1(p.witness->arc_flow) != p.z1 ||
          frontier.encoding.z2(p.witness->arc_flow) != p.z2) {
        flag(where + " disagrees with its witness");
      }
    }
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t j = k + 1; j < pts.size(); ++j) {
      if (pts[k].witness_id == pts[j].witness_id) flag("duplicate witness id " + std::to_string(pts[k].witness_id));
    }
  }
  return report;
}

AuditReport support_check(const ParetoFrontier& frontier, const SuperGraph& graph) {
  AuditReport report;
  const ObjectiveEncoding& enc = frontier.encoding;
  std::map<std::size_t, const ParetoPoint*> by_id;
  for (const ParetoPoint& p : frontier.points) by_id[p.witness_id] = &p;

  if (frontier.points.size() == 1) {
    const ParetoPoint& p = frontier.points.front();
    const IntegralFlow a = solve_min_cost(graph, enc.z1_costs);
    const IntegralFlow b = solve_min_cost(graph, enc.z2_costs);
    if (enc.z1(a.arc_flow) != p.z1 || enc.z2(b.arc_flow) != p.z2) {
      report.violations.push_back("single point is not the ideal point");
    }
    return report;
  }
  for (const Segment& seg : frontier.final_segments) {
    const ParetoPoint* left = by_id.count(seg.left) ? by_id[seg.left] : nullptr;
    const ParetoPoint* right = by_id.count(seg.right) ? by_id[seg.right] : nullptr;
    if (!left || !right) {
      report.violations.push_back("segment refers to a missing point");
      continue;
    }
    const IntegralFlow flow = solve_min_cost(graph, weighted_costs(enc, seg.w1, seg.w2));
    const Int128 optimum = weighted(seg, enc.z1(flow.arc_flow), enc.z2(flow.arc_flow));
    if (weighted(seg, left->z1, left->z2) != optimum || weighted(seg, right->z1, right->z2) != optimum) {
      report.violations.push_back("segment " + std::to_string(seg.left) + "-" +
                                  std::to_string(seg.right) + " endpoints do not attain " +
                                  to_string(optimum));
    }
  }
  if (frontier.final_segments.size() + 1 != frontier.points.size()) {
    report.violations.push_back("final segments do not chain the frontier points");
  }
  return report;
}

std::vector<ObjectivePair> extreme_nondominated(std::vector<ObjectivePair> points) {
  std::sort(points.begin(), points.end(), [](const ObjectivePair& a, const ObjectivePair& b) {
    return a.z2 != b.z2 ? a.z2 < b.z2 : a.z1 < b.z1;
  });
  std::vector<ObjectivePair> stair;
  for (const ObjectivePair& p : points) {
    if (stair.empty() || p.z1 < stair.back().z1) stair.push_back(p);
  }
  std::vector<ObjectivePair> hull;
  for (const ObjectivePair& p : stair) {
    while (hull.size() >= 2) {
      const ObjectivePair& a = hull[hull.size() - 2];
      const ObjectivePair& b = hull.back();
      const Int128 cross = static_cast<Int128>(b.z2 - a.z2) * (p.z1 - a.z1) -
                           static_cast<Int128>(b.z1 - a.z1) * (p.z2 - a.z2);
      if (cross > 0) break;  // b lies strictly below the chord a–p
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

}  // namespace sigtamp
