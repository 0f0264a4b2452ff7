#include "sigtamp/network_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sigtamp/errors.hpp"

namespace sigtamp {

using Json = nlohmann::ordered_json;

namespace {

template <typename T>
T required(const Json& object, const char* key, const char* context) {
  if (!object.contains(key)) {
    throw InputError(std::string(context) + " is missing field '" + key + "'");
  }
  try {
    return object.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(context) + " field '" + key + "': " + e.what());
  }
}

template <typename T>
T optional_field(const Json& object, const char* key, T fallback) {
  if (!object.contains(key) || object.at(key).is_null()) return fallback;
  try {
    return object.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string network_to_json(const RoadNetwork& network) {
  Json root;
  root["name"] = network.name;
  Json cells = Json::array();
  for (const Cell& c : network.cells) {
    cells.push_back({{"id", c.id},
                     {"kind", to_string(c.kind)},
                     {"max_occupancy", c.max_occupancy},
                     {"flow_capacity", c.flow_capacity},
                     {"lanes", c.lanes}});
  }
  root["cells"] = std::move(cells);
  Json connectors = Json::array();
  for (const Connector& c : network.connectors) {
    connectors.push_back(
        {{"id", c.id}, {"from", c.from}, {"to", c.to}, {"capacity", c.capacity}, {"lane", c.lane}});
  }
  root["connectors"] = std::move(connectors);
  Json nodes = Json::array();
  for (const TransshipmentNode& n : network.nodes) {
    nodes.push_back({{"id", n.id}, {"kind", to_string(n.kind)}});
  }
  root["nodes"] = std::move(nodes);
  Json groups = Json::array();
  for (const ConflictGroup& g : network.conflict_groups) {
    Json movements = Json::array();
    for (const Movement& m : g.movements) movements.push_back(Json::array({m.from_cell, m.to_cell}));
    Json group{{"id", g.id}, {"movements", std::move(movements)}};
    if (g.gadget_capacity) group["gadget_capacity"] = *g.gadget_capacity;
    groups.push_back(std::move(group));
  }
  root["conflict_groups"] = std::move(groups);

  const NetworkMetadata& meta = network.metadata;
  Json m;
  m["generator"] = meta.generator;
  m["seed"] = meta.seed ? Json(*meta.seed) : Json(nullptr);
  m["link_count"] = meta.link_count;
  m["average_link_length_m"] = meta.average_link_length_m;
  m["area_km2"] = meta.area_km2;
  Json positions = Json::object();
  for (const auto& [id, xy] : meta.positions) positions[id] = Json::array({xy.first, xy.second});
  m["positions"] = std::move(positions);
  root["metadata"] = std::move(m);
  return root.dump(2) + "\n";
}

RoadNetwork network_from_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("network file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("network file must hold a JSON object");

  RoadNetwork network;
  network.name = optional_field<std::string>(root, "name", "");
  for (const Json& c : optional_field<Json>(root, "cells", Json::array())) {
    Cell cell;
    cell.id = required<std::string>(c, "id", "cell");
    cell.kind = parse_cell_kind(optional_field<std::string>(c, "kind", "ordinary"));
    cell.max_occupancy = required<int>(c, "max_occupancy", "cell");
    cell.flow_capacity = required<int>(c, "flow_capacity", "cell");
    cell.lanes = optional_field<int>(c, "lanes", 1);
    network.cells.push_back(std::move(cell));
  }
  for (const Json& c : optional_field<Json>(root, "connectors", Json::array())) {
    Connector conn;
    conn.id = required<std::string>(c, "id", "connector");
    conn.from = required<std::string>(c, "from", "connector");
    conn.to = required<std::string>(c, "to", "connector");
    conn.capacity = required<int>(c, "capacity", "connector");
    conn.lane = optional_field<int>(c, "lane", 0);
    network.connectors.push_back(std::move(conn));
  }
  for (const Json& n : optional_field<Json>(root, "nodes", Json::array())) {
    network.nodes.push_back(TransshipmentNode{required<std::string>(n, "id", "node"),
                                              parse_node_kind(required<std::string>(n, "kind", "node"))});
  }
  for (const Json& g : optional_field<Json>(root, "conflict_groups", Json::array())) {
    ConflictGroup group;
    group.id = required<std::string>(g, "id", "conflict group");
    for (const Json& m : required<Json>(g, "movements", "conflict group")) {
      if (!m.is_array() || m.size() != 2) {
        throw InputError("conflict group '" + group.id + "' movements must be [from, to] pairs");
      }
      group.movements.push_back(Movement{m[0].get<std::string>(), m[1].get<std::string>()});
    }
    if (g.contains("gadget_capacity") && !g.at("gadget_capacity").is_null()) {
      group.gadget_capacity = g.at("gadget_capacity").get<int>();
    }
    network.conflict_groups.push_back(std::move(group));
  }
  if (root.contains("metadata") && root.at("metadata").is_object()) {
    const Json& m = root.at("metadata");
    NetworkMetadata& meta = network.metadata;
    meta.generator = optional_field<std::string>(m, "generator", "");
    if (m.contains("seed") && !m.at("seed").is_null()) meta.seed = m.at("seed").get<std::uint64_t>();
    meta.link_count = optional_field<int>(m, "link_count", 0);
    meta.average_link_length_m = optional_field<double>(m, "average_link_length_m", 0.0);
    meta.area_km2 = optional_field<double>(m, "area_km2", 0.0);
    if (m.contains("positions")) {
      for (const auto& [id, xy] : m.at("positions").items()) {
        meta.positions[id] = {xy.at(0).get<double>(), xy.at(1).get<double>()};
      }
    }
  }
  return network;
}

RoadNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open network file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return network_from_json(buffer.str());
}

void save_network(const RoadNetwork& network, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write network file " + path.string());
  out << network_to_json(network);
}

}  // namespace sigtamp
