#pragma once

// Primal network simplex over a strongly feasible spanning tree with
// block-search pricing. Integer capacities, integer (possibly negative)
// costs, node supplies summing to zero. Pivoting and tie-breaking follow a
// fixed arc order, so repeated runs on the same input are identical.

#include <cstdint>
#include <span>
#include <vector>

#include "sigtamp/int128.hpp"

namespace sigtamp {

// A plain capacitated network: arcs tail[a] -> head[a] with 0 <= x <= capacity.
struct FlowProblem {
  std::int32_t num_nodes = 0;
  std::vector<std::int32_t> tail;
  std::vector<std::int32_t> head;
  std::vector<std::int64_t> capacity;
  std::vector<std::int64_t> supply;  // b(v): positive = source of flow

  std::size_t arc_count() const { return tail.size(); }
};

class NetworkSimplex {
 public:
  enum class Status { optimal, infeasible, unbounded };

  explicit NetworkSimplex(const FlowProblem& problem);

  // Installs a cost vector. After a completed run() the current basis is
  // kept and only the potentials are recomputed, so the next run() starts
  // from a primal feasible tree.
  void set_costs(std::span<const std::int64_t> cost);
  Status run();

  std::int64_t flow(std::size_t arc) const { return flow_[arc]; }
  std::vector<std::int64_t> flows() const;
  Int128 objective() const;
  std::size_t pivot_count() const { return pivots_; }

 private:
  enum : std::int8_t { kStateUpper = -1, kStateTree = 0, kStateLower = 1 };
  enum : std::int8_t { kDirDown = -1, kDirUp = 1 };

  void init_tree();
  void assign_artificial_costs();
  void recompute_potentials();
  bool find_entering_arc();
  void find_join_node();
  bool find_leaving_arc();
  void change_flow(bool change);
  void update_tree_structure();
  void update_potential();

  std::int32_t node_num_ = 0;
  std::int32_t arc_num_ = 0;
  std::int32_t root_ = 0;
  std::int64_t art_cost_ = 0;
  std::int64_t infinite_ = 0;
  bool has_basis_ = false;
  std::size_t pivots_ = 0;

  std::vector<std::int64_t> supply_;
  // Arc data; real arcs first, then one artificial arc per node.
  std::vector<std::int32_t> source_;
  std::vector<std::int32_t> target_;
  std::vector<std::int64_t> cap_;
  std::vector<std::int64_t> cost_;
  std::vector<std::int64_t> flow_;
  std::vector<std::int8_t> state_;

  // Spanning tree, indexed by node (root included).
  std::vector<std::int64_t> pi_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> pred_;
  std::vector<std::int32_t> thread_;
  std::vector<std::int32_t> rev_thread_;
  std::vector<std::int32_t> succ_num_;
  std::vector<std::int32_t> last_succ_;
  std::vector<std::int8_t> pred_dir_;
  std::vector<std::int32_t> dirty_revs_;

  // Pivot state.
  std::int32_t block_size_ = 0;
  std::int32_t next_arc_ = 0;
  std::int32_t in_arc_ = 0;
  std::int32_t join_ = 0;
  std::int32_t u_in_ = 0;
  std::int32_t v_in_ = 0;
  std::int32_t u_out_ = 0;
  std::int32_t v_out_ = 0;
  std::int64_t delta_ = 0;
};

}  // namespace sigtamp
