#pragma once

// Hand-built networks shared by the unit and acceptance tests. They use the
// network types directly so the generators stay under test.

#include <random>
#include <string>
#include <vector>

#include "sigtamp/network.hpp"
#include "sigtamp/supergraph.hpp"

namespace sigtamp::testing {

struct NetBuilder {
  RoadNetwork net;
  int occupancy = 5;

  const std::string& cell(const std::string& id, CellKind kind = CellKind::ordinary) {
    net.cells.push_back(Cell{id, kind, occupancy, 1, 1});
    return net.cells.back().id;
  }
  void link(const std::string& from, const std::string& to) {
    net.connectors.push_back(Connector{from + "-" + to, from, to, 1, 0});
  }
  // from -> c0 -> ... -> c{n-1}; returns the last id (from itself when n = 0).
  std::string chain(const std::string& from, const std::string& prefix, int n) {
    std::string last = from;
    for (int k = 0; k < n; ++k) {
      const std::string id = prefix + std::to_string(k);
      cell(id);
      link(last, id);
      last = id;
    }
    return last;
  }
  void gadget(const std::string& id, std::vector<Movement> movements) {
    net.conflict_groups.push_back(ConflictGroup{id, std::move(movements), std::nullopt});
  }
};

// src -> c0 -> ... -> c{n-1} -> snk
inline RoadNetwork corridor(int cells, int occupancy = 5) {
  NetBuilder b;
  b.occupancy = occupancy;
  b.cell("src", CellKind::source);
  const std::string last = b.chain("src", "c", cells);
  b.cell("snk", CellKind::sink);
  b.link(last, "snk");
  b.net.name = "corridor";
  return b.net;
}

// Two approaches meeting at one unit gadget. `down` ordinary cells follow
// the gadget on each exit before the sink; zero sends the exits straight
// into the sink cells.
inline RoadNetwork toy_crossing(int down = 0, int occupancy = 5, bool turn = false) {
  NetBuilder b;
  b.occupancy = occupancy;
  b.cell("w.src", CellKind::source);
  b.cell("n.src", CellKind::source);
  b.cell("w.in");
  b.cell("n.in");
  b.link("w.src", "w.in");
  b.link("n.src", "n.in");
  b.cell("e.snk", CellKind::sink);
  b.cell("s.snk", CellKind::sink);
  std::string e = "e.snk";
  std::string s = "s.snk";
  if (down > 0) {
    b.cell("e.0");
    b.cell("s.0");
    std::string pe = "e.0";
    std::string ps = "s.0";
    for (int k = 1; k < down; ++k) {
      const std::string ek = "e." + std::to_string(k);
      const std::string sk = "s." + std::to_string(k);
      b.cell(ek);
      b.cell(sk);
      b.link(pe, ek);
      b.link(ps, sk);
      pe = ek;
      ps = sk;
    }
    b.link(pe, "e.snk");
    b.link(ps, "s.snk");
    e = "e.0";
    s = "s.0";
  }
  std::vector<Movement> moves{{"w.in", e}, {"n.in", s}};
  if (turn) moves.push_back({"w.in", s});
  b.gadget("x", moves);
  b.net.name = "toy-crossing";
  return b.net;
}

// A west-east street crossing two north-south streets at gadgets x0, x1.
inline RoadNetwork toy_double_crossing(int occupancy = 5) {
  NetBuilder b;
  b.occupancy = occupancy;
  b.cell("w.src", CellKind::source);
  b.cell("w.in");
  b.link("w.src", "w.in");
  b.cell("mid");
  b.cell("e.snk", CellKind::sink);
  for (int k = 0; k < 2; ++k) {
    const std::string n = "n" + std::to_string(k);
    b.cell(n + ".src", CellKind::source);
    b.cell(n + ".in");
    b.link(n + ".src", n + ".in");
    b.cell("s" + std::to_string(k) + ".snk", CellKind::sink);
  }
  b.gadget("x0", {{"w.in", "mid"}, {"n0.in", "s0.snk"}});
  b.gadget("x1", {{"mid", "e.snk"}, {"n1.in", "s1.snk"}});
  b.net.name = "toy-double-crossing";
  return b.net;
}

inline DemandProfile arrivals(const RoadNetwork& network, int steps,
                              const std::vector<std::vector<std::int32_t>>& per_source) {
  DemandProfile d;
  std::size_t k = 0;
  for (const Cell& c : network.cells) {
    if (c.kind != CellKind::source) continue;
    std::vector<std::int32_t> a(static_cast<std::size_t>(steps), 0);
    if (k < per_source.size()) {
      for (std::size_t t = 0; t < per_source[k].size() && t < a.size(); ++t) a[t] = per_source[k][t];
    }
    d.entries.push_back({c.id, a});
    ++k;
  }
  return d;
}

// The crossing used throughout: two vehicles per approach, |T| = 6.
inline SuperGraph crossing_toy_graph(int down = 0) {
  const RoadNetwork net = toy_crossing(down);
  return expand(net, Horizon{6, 2.0}, arrivals(net, 6, {{1, 1}, {1, 1}}));
}

struct MicroInstance {
  RoadNetwork network;
  SuperGraph graph;
  std::string description;
};

// At most two unit gadgets, |T| <= 8, D <= 4.
inline MicroInstance random_micro_instance(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int occupancy = pick(1, 3);
  RoadNetwork net;
  std::string shape;
  switch (pick(0, 3)) {
    case 0: net = toy_crossing(0, occupancy); shape = "crossing"; break;
    case 1: net = toy_crossing(1, occupancy); shape = "crossing+down"; break;
    case 2: net = toy_crossing(0, occupancy, true); shape = "crossing+turn"; break;
    default: net = toy_double_crossing(occupancy); shape = "double"; break;
  }
  const int steps = pick(4, 8);
  const int total = pick(1, 4);
  std::size_t sources = 0;
  for (const Cell& c : net.cells) sources += c.kind == CellKind::source ? 1 : 0;
  std::vector<std::vector<std::int32_t>> per(sources, std::vector<std::int32_t>(static_cast<std::size_t>(steps), 0));
  for (int v = 0; v < total; ++v) {
    per[static_cast<std::size_t>(pick(0, static_cast<int>(sources) - 1))][static_cast<std::size_t>(pick(0, steps / 2))] += 1;
  }
  MicroInstance m;
  m.network = net;
  m.graph = expand(net, Horizon{steps, 2.0}, arrivals(net, steps, per));
  m.description = shape + " N=" + std::to_string(occupancy) + " T=" + std::to_string(steps) +
                  " D=" + std::to_string(total);
  return m;
}

}  // namespace sigtamp::testing
