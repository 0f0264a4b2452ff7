#pragma once

#include <filesystem>
#include <string>

#include "sigtamp/network.hpp"

namespace sigtamp {

// Network description files are JSON objects with arrays `cells`,
// `connectors`, `nodes` and `conflict_groups` plus an optional `metadata`
// object. See README.md for the schema.
std::string network_to_json(const RoadNetwork& network);
RoadNetwork network_from_json(const std::string& text);

RoadNetwork load_network(const std::filesystem::path& path);
void save_network(const RoadNetwork& network, const std::filesystem::path& path);

}  // namespace sigtamp
