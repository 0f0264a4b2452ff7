#include "sigtamp/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sigtamp/errors.hpp"
#include "sigtamp/kernels.hpp"

namespace sigtamp {

namespace {
constexpr double kBlockSizeFactor = 1.0;
constexpr std::int32_t kMinBlockSize = 10;
}  // namespace

NetworkSimplex::NetworkSimplex(const FlowProblem& problem) {
  const std::size_t m = problem.arc_count();
  if (problem.head.size() != m || problem.capacity.size() != m) {
    throw InputError("flow problem arc arrays have different lengths");
  }
  if (problem.supply.size() != static_cast<std::size_t>(problem.num_nodes)) {
    throw InputError("flow problem supply vector does not match the node count");
  }
  if (m >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max() / 2)) {
    throw InputError("flow problem has too many arcs");
  }
  node_num_ = problem.num_nodes;
  arc_num_ = static_cast<std::int32_t>(m);
  root_ = node_num_;

  Int128 supply_sum = 0;
  Int128 capacity_sum = 0;
  for (std::int64_t s : problem.supply) supply_sum += s < 0 ? -s : s;
  for (std::int64_t c : problem.capacity) {
    if (c < 0) throw InputError("negative arc capacity");
    capacity_sum += c;
  }
  (void)capacity_sum;
  infinite_ = std::numeric_limits<std::int64_t>::max() / 4;
  if (supply_sum >= infinite_) throw InputError("supplies too large");

  const std::size_t all_arcs = m + static_cast<std::size_t>(node_num_);
  source_.resize(all_arcs);
  target_.resize(all_arcs);
  cap_.resize(all_arcs);
  cost_.assign(all_arcs, 0);
  flow_.assign(all_arcs, 0);
  state_.assign(all_arcs, kStateLower);
  for (std::size_t a = 0; a < m; ++a) {
    if (problem.tail[a] < 0 || problem.tail[a] >= node_num_ || problem.head[a] < 0 ||
        problem.head[a] >= node_num_) {
      throw InputError("flow problem arc endpoint out of range");
    }
    source_[a] = problem.tail[a];
    target_[a] = problem.head[a];
    cap_[a] = problem.capacity[a];
  }
  supply_.assign(problem.supply.begin(), problem.supply.end());
  supply_.push_back(0);

  const std::size_t n = static_cast<std::size_t>(node_num_) + 1;
  pi_.assign(n, 0);
  parent_.assign(n, -1);
  pred_.assign(n, -1);
  thread_.assign(n, 0);
  rev_thread_.assign(n, 0);
  succ_num_.assign(n, 0);
  last_succ_.assign(n, 0);
  pred_dir_.assign(n, kDirUp);
  dirty_revs_.reserve(n);

  block_size_ = std::max(
      static_cast<std::int32_t>(kBlockSizeFactor * std::sqrt(static_cast<double>(arc_num_))), kMinBlockSize);
}

void NetworkSimplex::set_costs(std::span<const std::int64_t> cost) {
  if (cost.size() != static_cast<std::size_t>(arc_num_)) {
    throw InputError("cost vector length does not match the arc count");
  }
  // Potentials are sums of up to |V| arc costs; keep every intermediate
  // value (artificial cost included) far from the int64 limit.
  const std::uint64_t max_cost = kernels::max_abs(cost);
  const Int128 art = (static_cast<Int128>(max_cost) + 1) * (static_cast<Int128>(node_num_) + 1);
  if (art * 4 >= static_cast<Int128>(std::numeric_limits<std::int64_t>::max())) {
    throw InvariantError("arc costs too large: potentials could overflow 64-bit arithmetic");
  }
  std::copy(cost.begin(), cost.end(), cost_.begin());
  art_cost_ = static_cast<std::int64_t>(art);
  if (has_basis_) {
    assign_artificial_costs();
    recompute_potentials();
  }
}

void NetworkSimplex::assign_artificial_costs() {
  for (std::int32_t u = 0; u < node_num_; ++u) {
    const std::int32_t e = arc_num_ + u;
    cost_[static_cast<std::size_t>(e)] = source_[static_cast<std::size_t>(e)] == root_ ? art_cost_ : 0;
  }
}

void NetworkSimplex::recompute_potentials() {
  pi_[static_cast<std::size_t>(root_)] = 0;
  for (std::int32_t u = thread_[static_cast<std::size_t>(root_)]; u != root_;
       u = thread_[static_cast<std::size_t>(u)]) {
    const auto us = static_cast<std::size_t>(u);
    const std::int32_t e = pred_[us];
    pi_[us] = pi_[static_cast<std::size_t>(parent_[us])] - pred_dir_[us] * cost_[static_cast<std::size_t>(e)];
  }
}

void NetworkSimplex::init_tree() {
  const auto root = static_cast<std::size_t>(root_);
  std::fill(state_.begin(), state_.begin() + arc_num_, kStateLower);
  std::fill(flow_.begin(), flow_.begin() + arc_num_, 0);

  parent_[root] = -1;
  pred_[root] = -1;
  thread_[root] = 0;
  rev_thread_[0] = root_;
  succ_num_[root] = node_num_ + 1;
  last_succ_[root] = root_ - 1;
  pi_[root] = 0;

  for (std::int32_t u = 0; u < node_num_; ++u) {
    const auto us = static_cast<std::size_t>(u);
    const std::int32_t e = arc_num_ + u;
    const auto es = static_cast<std::size_t>(e);
    parent_[us] = root_;
    pred_[us] = e;
    thread_[us] = u + 1;
    rev_thread_[us + 1] = u;
    succ_num_[us] = 1;
    last_succ_[us] = u;
    cap_[es] = infinite_;
    state_[es] = kStateTree;
    if (supply_[us] >= 0) {
      pred_dir_[us] = kDirUp;
      pi_[us] = 0;
      source_[es] = u;
      target_[es] = root_;
      flow_[es] = supply_[us];
      cost_[es] = 0;
    } else {
      pred_dir_[us] = kDirDown;
      pi_[us] = art_cost_;
      source_[es] = root_;
      target_[es] = u;
      flow_[es] = -supply_[us];
      cost_[es] = art_cost_;
    }
  }
  next_arc_ = 0;
}

bool NetworkSimplex::find_entering_arc() {
  std::int64_t min = 0;
  std::int32_t cnt = block_size_;
  std::int32_t e = next_arc_;
  auto reduced = [&](std::int32_t a) {
    const auto as = static_cast<std::size_t>(a);
    return state_[as] * (cost_[as] + pi_[static_cast<std::size_t>(source_[as])] -
                         pi_[static_cast<std::size_t>(target_[as])]);
  };
  for (; e != arc_num_; ++e) {
    const std::int64_t c = reduced(e);
    if (c < min) {
      min = c;
      in_arc_ = e;
    }
    if (--cnt == 0) {
      if (min < 0) {
        next_arc_ = e;
        return true;
      }
      cnt = block_size_;
    }
  }
  for (e = 0; e != next_arc_; ++e) {
    const std::int64_t c = reduced(e);
    if (c < min) {
      min = c;
      in_arc_ = e;
    }
    if (--cnt == 0) {
      if (min < 0) {
        next_arc_ = e;
        return true;
      }
      cnt = block_size_;
    }
  }
  if (min >= 0) return false;
  next_arc_ = e;
  return true;
}

void NetworkSimplex::find_join_node() {
  std::int32_t u = source_[static_cast<std::size_t>(in_arc_)];
  std::int32_t v = target_[static_cast<std::size_t>(in_arc_)];
  while (u != v) {
    if (succ_num_[static_cast<std::size_t>(u)] < succ_num_[static_cast<std::size_t>(v)]) {
      u = parent_[static_cast<std::size_t>(u)];
    } else {
      v = parent_[static_cast<std::size_t>(v)];
    }
  }
  join_ = u;
}

bool NetworkSimplex::find_leaving_arc() {
  const auto in = static_cast<std::size_t>(in_arc_);
  std::int32_t first;
  std::int32_t second;
  if (state_[in] == kStateLower) {
    first = source_[in];
    second = target_[in];
  } else {
    first = target_[in];
    second = source_[in];
  }
  delta_ = cap_[in];
  int result = 0;
  for (std::int32_t u = first; u != join_; u = parent_[static_cast<std::size_t>(u)]) {
    const auto us = static_cast<std::size_t>(u);
    const auto e = static_cast<std::size_t>(pred_[us]);
    std::int64_t d = flow_[e];
    if (pred_dir_[us] == kDirDown) d = cap_[e] >= infinite_ ? infinite_ : cap_[e] - d;
    if (d < delta_) {
      delta_ = d;
      u_out_ = u;
      result = 1;
    }
  }
  for (std::int32_t u = second; u != join_; u = parent_[static_cast<std::size_t>(u)]) {
    const auto us = static_cast<std::size_t>(u);
    const auto e = static_cast<std::size_t>(pred_[us]);
    std::int64_t d = flow_[e];
    if (pred_dir_[us] == kDirUp) d = cap_[e] >= infinite_ ? infinite_ : cap_[e] - d;
    if (d <= delta_) {
      delta_ = d;
      u_out_ = u;
      result = 2;
    }
  }
  if (result == 1) {
    u_in_ = first;
    v_in_ = second;
  } else {
    u_in_ = second;
    v_in_ = first;
  }
  return result != 0;
}

void NetworkSimplex::change_flow(bool change) {
  const auto in = static_cast<std::size_t>(in_arc_);
  if (delta_ > 0) {
    const std::int64_t val = state_[in] * delta_;
    flow_[in] += val;
    for (std::int32_t u = source_[in]; u != join_; u = parent_[static_cast<std::size_t>(u)]) {
      const auto us = static_cast<std::size_t>(u);
      flow_[static_cast<std::size_t>(pred_[us])] -= pred_dir_[us] * val;
    }
    for (std::int32_t u = target_[in]; u != join_; u = parent_[static_cast<std::size_t>(u)]) {
      const auto us = static_cast<std::size_t>(u);
      flow_[static_cast<std::size_t>(pred_[us])] += pred_dir_[us] * val;
    }
  }
  if (change) {
    state_[in] = kStateTree;
    const auto out = static_cast<std::size_t>(pred_[static_cast<std::size_t>(u_out_)]);
    state_[out] = flow_[out] == 0 ? kStateLower : kStateUpper;
  } else {
    state_[in] = static_cast<std::int8_t>(-state_[in]);
  }
}

void NetworkSimplex::update_tree_structure() {
  auto& parent = parent_;
  auto& thread = thread_;
  auto& rev_thread = rev_thread_;
  auto& last_succ = last_succ_;
  auto& succ_num = succ_num_;
  auto at = [](std::int32_t i) { return static_cast<std::size_t>(i); };

  const std::int32_t old_rev_thread = rev_thread[at(u_out_)];
  const std::int32_t old_succ_num = succ_num[at(u_out_)];
  const std::int32_t old_last_succ = last_succ[at(u_out_)];
  v_out_ = parent[at(u_out_)];

  if (u_in_ == u_out_) {
    parent[at(u_in_)] = v_in_;
    pred_[at(u_in_)] = in_arc_;
    pred_dir_[at(u_in_)] = u_in_ == source_[at(in_arc_)] ? kDirUp : kDirDown;

    if (thread[at(v_in_)] != u_out_) {
      std::int32_t after = thread[at(old_last_succ)];
      thread[at(old_rev_thread)] = after;
      rev_thread[at(after)] = old_rev_thread;
      after = thread[at(v_in_)];
      thread[at(v_in_)] = u_out_;
      rev_thread[at(u_out_)] = v_in_;
      thread[at(old_last_succ)] = after;
      rev_thread[at(after)] = old_last_succ;
    }
  } else {
    // When old_rev_thread is v_in, join and v_out coincide.
    const std::int32_t thread_continue =
        old_rev_thread == v_in_ ? thread[at(old_last_succ)] : thread[at(v_in_)];

    // Re-hang the stem (u_in .. u_out) below v_in, fixing thread order.
    std::int32_t stem = u_in_;
    std::int32_t par_stem = v_in_;
    std::int32_t next_stem;
    std::int32_t last = last_succ[at(u_in_)];
    std::int32_t before;
    std::int32_t after = thread[at(last)];
    thread[at(v_in_)] = u_in_;
    dirty_revs_.clear();
    dirty_revs_.push_back(v_in_);
    while (stem != u_out_) {
      next_stem = parent[at(stem)];
      thread[at(last)] = next_stem;
      dirty_revs_.push_back(last);

      before = rev_thread[at(stem)];
      thread[at(before)] = after;
      rev_thread[at(after)] = before;

      parent[at(stem)] = par_stem;
      par_stem = stem;
      stem = next_stem;

      last = last_succ[at(stem)] == last_succ[at(par_stem)] ? rev_thread[at(par_stem)]
                                                              : last_succ[at(stem)];
      after = thread[at(last)];
    }
    parent[at(u_out_)] = par_stem;
    thread[at(last)] = thread_continue;
    rev_thread[at(thread_continue)] = last;
    last_succ[at(u_out_)] = last;

    if (old_rev_thread != v_in_) {
      thread[at(old_rev_thread)] = after;
      rev_thread[at(after)] = old_rev_thread;
    }

    for (std::int32_t u : dirty_revs_) rev_thread[at(thread[at(u)])] = u;

    // Reverse pred / pred_dir along the stem and rebuild subtree sizes.
    std::int32_t tmp_sc = 0;
    const std::int32_t tmp_ls = last_succ[at(u_out_)];
    for (std::int32_t u = u_out_, p = parent[at(u)]; u != u_in_; u = p, p = parent[at(u)]) {
      pred_[at(u)] = pred_[at(p)];
      pred_dir_[at(u)] = static_cast<std::int8_t>(-pred_dir_[at(p)]);
      tmp_sc += succ_num[at(u)] - succ_num[at(p)];
      succ_num[at(u)] = tmp_sc;
      last_succ[at(p)] = tmp_ls;
    }
    pred_[at(u_in_)] = in_arc_;
    pred_dir_[at(u_in_)] = u_in_ == source_[at(in_arc_)] ? kDirUp : kDirDown;
    succ_num[at(u_in_)] = old_succ_num;
  }

  const std::int32_t up_limit_out = last_succ[at(join_)] == v_in_ ? join_ : -1;
  const std::int32_t last_succ_out = last_succ[at(u_out_)];
  for (std::int32_t u = v_in_; u != -1 && last_succ[at(u)] == v_in_; u = parent[at(u)]) {
    last_succ[at(u)] = last_succ_out;
  }

  if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
    for (std::int32_t u = v_out_; u != up_limit_out && last_succ[at(u)] == old_last_succ;
         u = parent[at(u)]) {
      last_succ[at(u)] = old_rev_thread;
    }
  } else if (last_succ_out != old_last_succ) {
    for (std::int32_t u = v_out_; u != up_limit_out && last_succ[at(u)] == old_last_succ;
         u = parent[at(u)]) {
      last_succ[at(u)] = last_succ_out;
    }
  }

  for (std::int32_t u = v_in_; u != join_; u = parent[at(u)]) succ_num[at(u)] += old_succ_num;
  for (std::int32_t u = v_out_; u != join_; u = parent[at(u)]) succ_num[at(u)] -= old_succ_num;
}

void NetworkSimplex::update_potential() {
  const auto u_in = static_cast<std::size_t>(u_in_);
  const std::int64_t sigma = pi_[static_cast<std::size_t>(v_in_)] - pi_[u_in] -
                             pred_dir_[u_in] * cost_[static_cast<std::size_t>(in_arc_)];
  const std::int32_t end = thread_[static_cast<std::size_t>(last_succ_[u_in])];
  for (std::int32_t u = u_in_; u != end; u = thread_[static_cast<std::size_t>(u)]) {
    pi_[static_cast<std::size_t>(u)] += sigma;
  }
}

NetworkSimplex::Status NetworkSimplex::run() {
  if (!has_basis_) {
    if (art_cost_ == 0) {
      // No costs installed yet: behave as all-zero costs.
      std::vector<std::int64_t> zero(static_cast<std::size_t>(arc_num_), 0);
      set_costs(zero);
    }
    init_tree();
  }
  while (find_entering_arc()) {
    find_join_node();
    const bool change = find_leaving_arc();
    if (delta_ >= infinite_) return Status::unbounded;
    change_flow(change);
    if (change) {
      update_tree_structure();
      update_potential();
    }
    ++pivots_;
  }
  for (std::int32_t e = arc_num_; e < arc_num_ + node_num_; ++e) {
    if (flow_[static_cast<std::size_t>(e)] != 0) {
      has_basis_ = false;
      return Status::infeasible;
    }
  }
  has_basis_ = true;
  return Status::optimal;
}

std::vector<std::int64_t> NetworkSimplex::flows() const {
  return {flow_.begin(), flow_.begin() + arc_num_};
}

Int128 NetworkSimplex::objective() const {
  Int128 total = 0;
  for (std::int32_t a = 0; a < arc_num_; ++a) {
    total += static_cast<Int128>(cost_[static_cast<std::size_t>(a)]) * flow_[static_cast<std::size_t>(a)];
  }
  return total;
}

}  // namespace sigtamp
