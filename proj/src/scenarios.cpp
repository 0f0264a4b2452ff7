#include "sigtamp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sigtamp/errors.hpp"
#include "sigtamp/network_io.hpp"

namespace sigtamp {

using Json = nlohmann::ordered_json;

namespace {

int cells_for(double length_m, double cell_length_m) {
  if (!(cell_length_m > 0.0)) throw InputError("cell length must be positive");
  return std::max(1, static_cast<int>(std::lround(length_m / cell_length_m)));
}

// Builds a chain of cells and the plain connectors between consecutive ones.
class Builder {
 public:
  explicit Builder(CellDefaults defaults) : defaults_(defaults) {}

  const std::string& cell(std::string id, CellKind kind = CellKind::ordinary) {
    net.cells.push_back(Cell{std::move(id), kind, defaults_.max_occupancy, defaults_.flow_capacity, 1});
    return net.cells.back().id;
  }

  void connect(const std::string& from, const std::string& to) {
    net.connectors.push_back(Connector{from + "~" + to, from, to, defaults_.flow_capacity, 0});
  }

  // Appends `count` ordinary cells after `previous` (if any); returns their ids.
  std::vector<std::string> run(const std::string& prefix, int count, const std::string& previous) {
    std::vector<std::string> ids;
    for (int m = 0; m < count; ++m) {
      ids.push_back(cell(prefix + ".c" + std::to_string(m)));
      const std::string& before = m == 0 ? previous : ids[static_cast<std::size_t>(m - 1)];
      if (!before.empty()) connect(before, ids.back());
    }
    return ids;
  }

  RoadNetwork net;

 private:
  CellDefaults defaults_;
};

}  // namespace

GridSpec grid_preset(GridKind kind, double cell_length_m) {
  GridSpec spec;
  spec.cell_length_m = cell_length_m;
  switch (kind) {
    case GridKind::A: spec.size = 2; spec.link_length_m = 500.0; break;
    case GridKind::B: spec.size = 3; spec.link_length_m = 375.0; break;
    case GridKind::C: spec.size = 4; spec.link_length_m = 250.0; break;
  }
  return spec;
}

RoadNetwork generate_grid(const GridSpec& spec) {
  const int k = spec.size;
  if (k < 1) throw InputError("grid needs at least one intersection per side");
  const int per_link = cells_for(spec.link_length_m, spec.cell_length_m);
  Builder b(spec.cells);

  // first[s][p] / last[s][p]: first and last cell of link p (in travel order) on street s.
  // Streets 0..k-1 run horizontally (row r), k..2k-1 vertically (column c).
  std::vector<std::vector<std::string>> first(2 * static_cast<std::size_t>(k));
  std::vector<std::vector<std::string>> last(2 * static_cast<std::size_t>(k));
  for (int s = 0; s < 2 * k; ++s) {
    const bool horizontal = s < k;
    const std::string name = (horizontal ? "h" : "v") + std::to_string(horizontal ? s : s - k);
    std::string previous = b.cell(name + ".src", CellKind::source);
    for (int p = 0; p <= k; ++p) {
      auto ids = b.run(name + ".l" + std::to_string(p), per_link, p == 0 ? previous : std::string());
      first[static_cast<std::size_t>(s)].push_back(ids.front());
      last[static_cast<std::size_t>(s)].push_back(ids.back());
    }
    b.connect(last[static_cast<std::size_t>(s)].back(), b.cell(name + ".snk", CellKind::sink));
  }

  // Even rows run east and even columns run south; odd ones the other way.
  auto travel_position = [k](int street_index, int cross_index) {
    return street_index % 2 == 0 ? cross_index : k - 1 - cross_index;
  };
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const auto h = static_cast<std::size_t>(r);
      const auto v = static_cast<std::size_t>(k + c);
      const auto ph = static_cast<std::size_t>(travel_position(r, c));
      const auto pv = static_cast<std::size_t>(travel_position(c, r));
      const std::string& h_in = last[h][ph];
      const std::string& h_out = first[h][ph + 1];
      const std::string& v_in = last[v][pv];
      const std::string& v_out = first[v][pv + 1];
      ConflictGroup group;
      group.id = "x" + std::to_string(r) + "_" + std::to_string(c);
      group.movements = {{h_in, h_out}, {h_in, v_out}, {v_in, v_out}, {v_in, h_out}};
      b.net.conflict_groups.push_back(std::move(group));
      b.net.metadata.positions[b.net.conflict_groups.back().id] = {(c + 1) * spec.link_length_m,
                                                                   (r + 1) * spec.link_length_m};
    }
  }
  RoadNetwork net = std::move(b.net);
  net.name = "grid" + std::to_string(k) + "x" + std::to_string(k);
  net.metadata.generator = "grid";
  net.metadata.link_count = 2 * k * (k + 1);
  net.metadata.average_link_length_m = spec.link_length_m;
  net.metadata.area_km2 = kNominalAreaKm2;
  return net;
}

RoadNetwork generate_regular_grid(GridKind kind, double cell_length_m, CellDefaults cells) {
  GridSpec spec = grid_preset(kind, cell_length_m);
  spec.cells = cells;
  RoadNetwork net = generate_grid(spec);
  const char* names[] = {"A", "B", "C"};
  net.name = std::string("network-") + names[static_cast<int>(kind)];
  net.metadata.generator = std::string("grid-") + names[static_cast<int>(kind)];
  return net;
}

namespace {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::pair<int, int>> gabriel_edges(const std::vector<Point>& pts) {
  std::vector<std::pair<int, int>> edges;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point mid{(pts[i].x + pts[j].x) / 2, (pts[i].y + pts[j].y) / 2};
      const double radius = distance(pts[i], pts[j]) / 2;
      bool empty = true;
      for (int q = 0; q < n && empty; ++q) {
        if (q != i && q != j && distance(pts[q], mid) < radius) empty = false;
      }
      if (empty) edges.emplace_back(i, j);
    }
  }
  return edges;
}

// Depth-first orientation: tree edges point away from the root, the rest
// point back toward the earlier-visited endpoint. Empty when disconnected.
std::vector<std::pair<int, int>> orient(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[static_cast<std::size_t>(edges[e].first)].push_back({edges[e].second, e});
    adj[static_cast<std::size_t>(edges[e].second)].push_back({edges[e].first, e});
  }
  std::vector<int> visit_order(static_cast<std::size_t>(n), -1);
  std::vector<char> used(edges.size(), 0);
  std::vector<std::pair<int, int>> directed;
  int counter = 0;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  visit_order[0] = counter++;
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto& nbrs = adj[static_cast<std::size_t>(u)];
    if (next == nbrs.size()) {
      stack.pop_back();
      continue;
    }
    const auto [w, e] = nbrs[next++];
    if (used[e]) continue;
    used[e] = 1;
    const int from = u;
    if (visit_order[static_cast<std::size_t>(w)] < 0) {
      visit_order[static_cast<std::size_t>(w)] = counter++;
      directed.emplace_back(from, w);
      stack.push_back({w, 0});
    } else {
      directed.emplace_back(from, w);  // back edge toward an ancestor
    }
  }
  if (counter != n) return {};
  return directed;
}

std::optional<RoadNetwork> try_irregular(std::mt19937_64& rng, std::uint64_t seed, const IrregularSpec& spec) {
  const int n = spec.intersections;
  const double side = std::sqrt(kNominalAreaKm2) * 1000.0;
  const double min_gap = 0.4 * side / std::sqrt(static_cast<double>(n));
  std::vector<Point> pts;
  for (int tries = 0; static_cast<int>(pts.size()) < n && tries < 100000; ++tries) {
    const Point p{unit(rng) * side, unit(rng) * side};
    if (std::all_of(pts.begin(), pts.end(), [&](Point q) { return distance(p, q) >= min_gap; })) {
      pts.push_back(p);
    }
  }
  if (static_cast<int>(pts.size()) < n) return std::nullopt;

  const auto edges = gabriel_edges(pts);
  const auto links = orient(n, edges);
  if (links.empty()) return std::nullopt;

  double total = 0.0;
  for (const auto& [a, c] : links) total += distance(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(c)]);
  const double scale = spec.average_link_length_m / (total / static_cast<double>(links.size()));
  for (Point& p : pts) {
    p.x *= scale;
    p.y *= scale;
  }

  // Boundary points: the outermost intersections by distance from the
  // centroid, taken in angular order and alternately given a source or a sink.
  Point centre;
  for (Point p : pts) {
    centre.x += p.x / n;
    centre.y += p.y / n;
  }
  std::vector<int> by_distance(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) by_distance[static_cast<std::size_t>(i)] = i;
  std::stable_sort(by_distance.begin(), by_distance.end(), [&](int a, int c) {
    return distance(pts[static_cast<std::size_t>(a)], centre) > distance(pts[static_cast<std::size_t>(c)], centre);
  });
  const int boundary = spec.sources + spec.sinks;
  if (boundary > n || spec.sources < spec.sinks || spec.sources > spec.sinks + 1) {
    throw InputError("irregular generator needs sources = sinks or sinks + 1, within the intersection count");
  }
  std::vector<int> rim(by_distance.begin(), by_distance.begin() + boundary);
  auto angle = [&](int i) {
    return std::atan2(pts[static_cast<std::size_t>(i)].y - centre.y, pts[static_cast<std::size_t>(i)].x - centre.x);
  };
  std::stable_sort(rim.begin(), rim.end(), [&](int a, int c) { return angle(a) < angle(c); });
  std::vector<char> has_source(static_cast<std::size_t>(n), 0);
  std::vector<char> has_sink(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < rim.size(); ++k) {
    (k % 2 == 0 ? has_source : has_sink)[static_cast<std::size_t>(rim[k])] = 1;
  }

  std::vector<int> in(static_cast<std::size_t>(n), 0);
  std::vector<int> out(static_cast<std::size_t>(n), 0);
  for (const auto& [a, c] : links) {
    ++out[static_cast<std::size_t>(a)];
    ++in[static_cast<std::size_t>(c)];
  }
  for (int i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    if (in[s] + has_source[s] < 1 || out[s] + has_sink[s] < 1) return std::nullopt;
  }

  Builder b(spec.cells);
  const int boundary_cells = cells_for(spec.average_link_length_m, spec.cell_length_m);
  std::vector<std::vector<std::string>> approaches(static_cast<std::size_t>(n));
  std::vector<std::vector<std::string>> exits(static_cast<std::size_t>(n));
  double length_sum = 0.0;
  for (std::size_t e = 0; e < links.size(); ++e) {
    const auto [a, c] = links[e];
    const double len = distance(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(c)]);
    length_sum += len;
    auto ids = b.run("e" + std::to_string(e), cells_for(len, spec.cell_length_m), "");
    exits[static_cast<std::size_t>(a)].push_back(ids.front());
    approaches[static_cast<std::size_t>(c)].push_back(ids.back());
  }
  for (int i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const std::string tag = std::to_string(i);
    if (has_source[s]) {
      const std::string src = b.cell("r" + tag + ".src", CellKind::source);
      approaches[s].push_back(b.run("r" + tag, boundary_cells, src).back());
    }
    if (has_sink[s]) {
      auto ids = b.run("s" + tag, boundary_cells, "");
      exits[s].push_back(ids.front());
      b.connect(ids.back(), b.cell("s" + tag + ".snk", CellKind::sink));
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const std::string id = "x" + std::to_string(i);
    b.net.metadata.positions[id] = {pts[s].x, pts[s].y};
    if (approaches[s].size() == 1 && exits[s].size() > 1) {
      b.net.nodes.push_back(TransshipmentNode{id, NodeKind::diverge});
      b.connect(approaches[s].front(), id);
      for (const std::string& to : exits[s]) b.connect(id, to);
      continue;
    }
    ConflictGroup group;
    group.id = id;
    for (const std::string& from : approaches[s]) {
      for (const std::string& to : exits[s]) group.movements.push_back({from, to});
    }
    b.net.conflict_groups.push_back(std::move(group));
  }

  RoadNetwork net = std::move(b.net);
  net.name = "network-D";
  net.metadata.generator = "irregular";
  net.metadata.seed = seed;
  net.metadata.link_count = static_cast<int>(links.size());
  net.metadata.average_link_length_m = length_sum / static_cast<double>(links.size());
  net.metadata.area_km2 = kNominalAreaKm2;
  if (!validate(net).ok()) return std::nullopt;
  return net;
}

}  // namespace

RoadNetwork generate_irregular(std::uint64_t seed, const IrregularSpec& spec) {
  if (spec.intersections < 2) throw InputError("irregular generator needs at least two intersections");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    if (auto net = try_irregular(rng, seed, spec)) return std::move(*net);
  }
  throw InputError("irregular generator found no valid layout for seed " + std::to_string(seed) +
                   "; try another seed");
}

RoadNetwork generate_crossing(int arm_cells, CellDefaults cells) {
  if (arm_cells < 1) throw InputError("crossing arms need at least one cell");
  Builder b(cells);
  std::vector<std::string> approach;
  for (const char* arm : {"w", "n"}) {
    const std::string src = b.cell(std::string(arm) + ".src", CellKind::source);
    approach.push_back(b.run(arm, arm_cells, src).back());
  }
  std::vector<std::string> leave;
  for (const char* arm : {"e", "s"}) {
    auto ids = b.run(arm, arm_cells, "");
    leave.push_back(ids.front());
    b.connect(ids.back(), b.cell(std::string(arm) + ".snk", CellKind::sink));
  }
  ConflictGroup group;
  group.id = "x";
  group.movements = {{approach[0], leave[0]}, {approach[1], leave[1]}};
  b.net.conflict_groups.push_back(std::move(group));
  RoadNetwork net = std::move(b.net);
  net.name = "crossing";
  net.metadata.generator = "crossing";
  net.metadata.link_count = 4;
  return net;
}

DemandProfile demand_profile(const RoadNetwork& network, double rate_veh_per_hr, const Horizon& horizon) {
  const std::vector<std::int32_t> arrivals = discretize_rate(rate_veh_per_hr, horizon);
  DemandProfile demand;
  for (const Cell& c : network.cells) {
    if (c.kind == CellKind::source) demand.entries.push_back({c.id, arrivals});
  }
  return demand;
}

std::string to_string(SinkPolicy policy) {
  return policy == SinkPolicy::occupancy ? "occupancy" : "uncapacitated";
}

SinkPolicy parse_sink_policy(const std::string& text) {
  if (text == "uncapacitated") return SinkPolicy::uncapacitated;
  if (text == "occupancy") return SinkPolicy::occupancy;
  throw InputError("unknown sink policy '" + text + "'");
}

std::string scenario_to_json(const ScenarioConfig& c) {
  Json net{{"generator", c.network.generator}};
  net["seed"] = c.network.seed ? Json(*c.network.seed) : Json(nullptr);
  if (c.network.generator == "grid") {
    net["grid_size"] = c.network.grid_size;
    net["link_length_m"] = c.network.link_length_m;
  }
  if (c.network.generator == "crossing") net["arm_cells"] = c.network.arm_cells;
  if (c.network.generator == "file") net["path"] = c.network.path;
  Json root{{"name", c.name},
            {"network", std::move(net)},
            {"delta_tau", c.delta_tau},
            {"horizon_steps", c.horizon_steps},
            {"max_occupancy", c.max_occupancy},
            {"flow_capacity", c.flow_capacity},
            {"free_flow_speed_kmh", c.free_flow_speed_kmh},
            {"demand_veh_per_hr", c.demand_veh_per_hr},
            {"sink_policy", to_string(c.sink_policy)},
            {"minimize_switches", c.minimize_switches}};
  return root.dump(2) + "\n";
}

ScenarioConfig scenario_from_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("scenario file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("scenario file must hold a JSON object");
  ScenarioConfig c;
  try {
    c.name = root.value("name", c.name);
    if (!root.contains("network")) throw InputError("scenario is missing 'network'");
    const Json& net = root.at("network");
    c.network.generator = net.value("generator", c.network.generator);
    if (net.contains("seed") && !net.at("seed").is_null()) c.network.seed = net.at("seed").get<std::uint64_t>();
    c.network.grid_size = net.value("grid_size", c.network.grid_size);
    c.network.link_length_m = net.value("link_length_m", c.network.link_length_m);
    c.network.arm_cells = net.value("arm_cells", c.network.arm_cells);
    c.network.path = net.value("path", c.network.path);
    c.delta_tau = root.value("delta_tau", c.delta_tau);
    c.horizon_steps = root.value("horizon_steps", c.horizon_steps);
    c.max_occupancy = root.value("max_occupancy", c.max_occupancy);
    c.flow_capacity = root.value("flow_capacity", c.flow_capacity);
    c.free_flow_speed_kmh = root.value("free_flow_speed_kmh", c.free_flow_speed_kmh);
    c.demand_veh_per_hr = root.value("demand_veh_per_hr", c.demand_veh_per_hr);
    c.sink_policy = parse_sink_policy(root.value("sink_policy", std::string("uncapacitated")));
    c.minimize_switches = root.value("minimize_switches", c.minimize_switches);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("scenario field has the wrong type: ") + e.what());
  }
  if (c.network.generator == "D" && !c.network.seed) {
    throw InputError("scenario for network D must give network.seed");
  }
  if (c.horizon_steps < 1) throw InputError("horizon_steps must be >= 1");
  if (!(c.delta_tau > 0.0)) throw InputError("delta_tau must be positive");
  if (!(c.free_flow_speed_kmh > 0.0)) throw InputError("free_flow_speed_kmh must be positive");
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_json(buffer.str());
}

void save_scenario(const ScenarioConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write scenario file " + path.string());
  out << scenario_to_json(config);
}

RoadNetwork build_network(const ScenarioConfig& config, const std::filesystem::path& base_dir) {
  const CellDefaults cells{config.max_occupancy, config.flow_capacity};
  const double dx = config.cell_length_m();
  const std::string& g = config.network.generator;
  if (g == "A") return generate_regular_grid(GridKind::A, dx, cells);
  if (g == "B") return generate_regular_grid(GridKind::B, dx, cells);
  if (g == "C") return generate_regular_grid(GridKind::C, dx, cells);
  if (g == "D") {
    if (!config.network.seed) throw InputError("network D needs a seed");
    IrregularSpec spec;
    spec.cell_length_m = dx;
    spec.cells = cells;
    return generate_irregular(*config.network.seed, spec);
  }
  if (g == "grid") {
    return generate_grid(GridSpec{config.network.grid_size, config.network.link_length_m, dx, cells});
  }
  if (g == "crossing") return generate_crossing(config.network.arm_cells, cells);
  if (g == "file") {
    if (config.network.path.empty()) throw InputError("file network needs network.path");
    return load_network(base_dir / config.network.path);
  }
  throw InputError("unknown network generator '" + g + "'");
}

Instance build_instance(const ScenarioConfig& config, const std::filesystem::path& base_dir) {
  Instance inst;
  inst.network = build_network(config, base_dir);
  inst.demand = demand_profile(inst.network, config.demand_veh_per_hr, config.horizon());
  inst.graph = expand(inst.network, config.horizon(), inst.demand, config.sink_policy);
  return inst;
}

}  // namespace sigtamp
