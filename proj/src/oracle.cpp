#include "sigtamp/oracle.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <unordered_map>

#include "sigtamp/errors.hpp"

namespace sigtamp {

namespace {

struct Layout {
  std::vector<NodeId> order;
  std::vector<std::size_t> position;
  std::vector<std::vector<std::size_t>> out;
};

Layout make_layout(const SuperGraph& graph) {
  const std::size_t n = graph.nodes.size();
  Layout layout;
  layout.out.assign(n, {});
  std::vector<int> indegree(n, 0);
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    layout.out[static_cast<std::size_t>(graph.arcs[a].tail)].push_back(a);
    ++indegree[static_cast<std::size_t>(graph.arcs[a].head)];
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(static_cast<NodeId>(v));
  }
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    layout.order.push_back(v);
    for (std::size_t a : layout.out[static_cast<std::size_t>(v)]) {
      const auto h = static_cast<std::size_t>(graph.arcs[a].head);
      if (--indegree[h] == 0) ready.push(static_cast<NodeId>(h));
    }
  }
  if (layout.order.size() != n) throw InputError("oracle needs an acyclic super-graph");
  layout.position.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) layout.position[static_cast<std::size_t>(layout.order[k])] = k;
  return layout;
}

// Flow already pushed into nodes that are not yet visited, ordered by position.
using Pending = std::vector<std::pair<std::size_t, std::int64_t>>;

void add_pending(Pending& pending, std::size_t position, std::int64_t amount) {
  if (amount == 0) return;
  auto it = std::lower_bound(pending.begin(), pending.end(), position,
                             [](const auto& entry, std::size_t p) { return entry.first < p; });
  if (it != pending.end() && it->first == position) {
    it->second += amount;
  } else {
    pending.insert(it, {position, amount});
  }
}

std::string state_key(std::size_t k, const Pending& pending) {
  std::string key(reinterpret_cast<const char*>(&k), sizeof k);
  for (const auto& [p, amount] : pending) {
    key.append(reinterpret_cast<const char*>(&p), sizeof p);
    key.append(reinterpret_cast<const char*>(&amount), sizeof amount);
  }
  return key;
}

// Memoized search. Policy supplies the value algebra:
//   Value unit();                       value of the empty remainder
//   Value shifted(const Value&, Delta); add one arc bundle's contribution
//   void merge(Value& acc, Value);      combine alternatives
//   Delta delta(std::span<const std::size_t> arcs, std::span<const std::int64_t> flows);
//   bool empty(const Value&);           no feasible completion
template <class Policy>
class Search {
 public:
  using Value = typename Policy::Value;

  Search(const SuperGraph& graph, Policy policy, const OracleLimits& limits)
      : graph_(graph), layout_(make_layout(graph)), policy_(std::move(policy)), limits_(limits) {}

  Value run() { return solve(0, {}); }

 private:
  Value solve(std::size_t k, Pending pending) {
    if (k == layout_.order.size()) return pending.empty() ? policy_.unit() : Value{};
    const std::string key = state_key(k, pending);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= limits_.max_states) {
      throw InputError("instance too large for the exhaustive oracle");
    }

    const NodeId v = layout_.order[k];
    std::int64_t net = graph_.supply[static_cast<std::size_t>(v)];
    if (!pending.empty() && pending.front().first == k) {
      net += pending.front().second;
      pending.erase(pending.begin());
    }
    Value result{};
    const auto& arcs = layout_.out[static_cast<std::size_t>(v)];
    if (net >= 0) {
      std::vector<std::int64_t> split(arcs.size(), 0);
      distribute(k, arcs, split, 0, net, pending, result);
    }
    memo_.emplace(key, result);
    return result;
  }

  void distribute(std::size_t k, const std::vector<std::size_t>& arcs, std::vector<std::int64_t>& split,
                  std::size_t j, std::int64_t remaining, const Pending& pending, Value& result) {
    if (j == arcs.size()) {
      if (remaining != 0) return;
      Pending next = pending;
      for (std::size_t q = 0; q < arcs.size(); ++q) {
        const auto head = static_cast<std::size_t>(graph_.arcs[arcs[q]].head);
        add_pending(next, layout_.position[head], split[q]);
      }
      Value sub = solve(k + 1, std::move(next));
      if (!policy_.empty(sub)) policy_.merge(result, policy_.shifted(sub, policy_.delta(arcs, split)));
      return;
    }
    const std::int64_t cap = std::min<std::int64_t>(graph_.arcs[arcs[j]].capacity, remaining);
    for (std::int64_t f = 0; f <= cap; ++f) {
      split[j] = f;
      distribute(k, arcs, split, j + 1, remaining - f, pending, result);
    }
    split[j] = 0;
  }

  const SuperGraph& graph_;
  Layout layout_;
  Policy policy_;
  OracleLimits limits_;
  std::unordered_map<std::string, Value> memo_;
};

struct MinCostPolicy {
  std::span<const std::int64_t> cost;
  using Value = std::optional<Int128>;

  Value unit() const { return Int128{0}; }
  bool empty(const Value& v) const { return !v.has_value(); }
  Int128 delta(std::span<const std::size_t> arcs, std::span<const std::int64_t> flows) const {
    Int128 d = 0;
    for (std::size_t q = 0; q < arcs.size(); ++q) d += static_cast<Int128>(cost[arcs[q]]) * flows[q];
    return d;
  }
  Value shifted(const Value& v, Int128 d) const { return *v + d; }
  void merge(Value& acc, Value v) const {
    if (!acc || *v < *acc) acc = v;
  }
};

struct ParetoPolicy {
  const ObjectiveEncoding* enc;
  using Value = std::vector<ObjectivePair>;

  Value unit() const { return {ObjectivePair{0, 0}}; }
  bool empty(const Value& v) const { return v.empty(); }
  ObjectivePair delta(std::span<const std::size_t> arcs, std::span<const std::int64_t> flows) const {
    ObjectivePair d;
    for (std::size_t q = 0; q < arcs.size(); ++q) {
      d.z1 += enc->z1_costs[arcs[q]] * flows[q];
      d.z2 += enc->z2_costs[arcs[q]] * flows[q];
    }
    return d;
  }
  Value shifted(const Value& v, ObjectivePair d) const {
    Value out = v;
    for (ObjectivePair& p : out) {
      p.z1 += d.z1;
      p.z2 += d.z2;
    }
    return out;
  }
  // Keeps the nondominated subset, sorted by z2 ascending.
  void merge(Value& acc, Value v) const {
    acc.insert(acc.end(), v.begin(), v.end());
    std::sort(acc.begin(), acc.end(), [](const ObjectivePair& a, const ObjectivePair& b) {
      return a.z2 != b.z2 ? a.z2 < b.z2 : a.z1 < b.z1;
    });
    Value kept;
    for (const ObjectivePair& p : acc) {
      if (kept.empty() || p.z1 < kept.back().z1) kept.push_back(p);
    }
    acc = std::move(kept);
  }
};

}  // namespace

std::optional<Int128> brute_force_min_cost(const SuperGraph& graph, std::span<const std::int64_t> cost,
                                           const OracleLimits& limits) {
  if (cost.size() != graph.arcs.size()) throw InputError("cost vector does not match the super-graph");
  return Search<MinCostPolicy>(graph, MinCostPolicy{cost}, limits).run();
}

std::vector<ObjectivePair> brute_force_nondominated(const SuperGraph& graph,
                                                    const ObjectiveEncoding& encoding,
                                                    const OracleLimits& limits) {
  std::vector<ObjectivePair> points = Search<ParetoPolicy>(graph, ParetoPolicy{&encoding}, limits).run();
  for (ObjectivePair& p : points) {
    p.z1 += encoding.z1_constant;
    p.z2 += encoding.z2_constant;
  }
  return points;
}

std::vector<ObjectivePair> brute_force_frontier(const SuperGraph& graph, const ObjectiveEncoding& encoding,
                                                const OracleLimits& limits) {
  return extreme_nondominated(brute_force_nondominated(graph, encoding, limits));
}

std::size_t enumerate_flows(const SuperGraph& graph,
                            const std::function<bool(std::span<const std::int32_t>)>& visit,
                            std::size_t max_flows) {
  const Layout layout = make_layout(graph);
  std::vector<std::int32_t> flow(graph.arcs.size(), 0);
  std::vector<std::int64_t> inflow(graph.nodes.size(), 0);
  std::size_t count = 0;
  bool stop = false;

  std::function<void(std::size_t)> node_step;
  std::function<void(std::size_t, std::size_t, std::int64_t)> arc_step =
      [&](std::size_t k, std::size_t j, std::int64_t remaining) {
        if (stop) return;
        const auto& arcs = layout.out[static_cast<std::size_t>(layout.order[k])];
        if (j == arcs.size()) {
          if (remaining == 0) node_step(k + 1);
          return;
        }
        const SuperArc& arc = graph.arcs[arcs[j]];
        const std::int64_t cap = std::min<std::int64_t>(arc.capacity, remaining);
        for (std::int64_t f = 0; f <= cap && !stop; ++f) {
          flow[arcs[j]] = static_cast<std::int32_t>(f);
          inflow[static_cast<std::size_t>(arc.head)] += f;
          arc_step(k, j + 1, remaining - f);
          inflow[static_cast<std::size_t>(arc.head)] -= f;
        }
        flow[arcs[j]] = 0;
      };
  node_step = [&](std::size_t k) {
    if (stop) return;
    if (k == layout.order.size()) {
      if (++count > max_flows) throw InputError("too many feasible flows to enumerate");
      if (!visit(flow)) stop = true;
      return;
    }
    const auto v = static_cast<std::size_t>(layout.order[k]);
    const std::int64_t net = graph.supply[v] + inflow[v];
    if (net < 0) return;
    arc_step(k, 0, net);
  };
  node_step(0);
  return count;
}

}  // namespace sigtamp
