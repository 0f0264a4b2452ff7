#pragma once

// Frontier shape diagnostics on the normalized scale, where noticeability
// z2 and impact |z1| are both divided by their maxima over the frontier.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigtamp/adversary.hpp"

namespace sigtamp {

struct NormalizedPoint {
  double z2 = 0.0;      // z2 / z2_max
  double impact = 0.0;  // |z1| / |z1|_max

  bool operator==(const NormalizedPoint&) const = default;
};

// Sorts by z2; a frontier whose z2 or |z1| never leaves zero collapses to {(0, 0)}.
std::vector<NormalizedPoint> normalize(std::span<const ObjectivePair> frontier);

// Both absent for fewer than two normalized points.
std::optional<double> slope_at_origin(std::span<const NormalizedPoint> points);
std::optional<double> concavity_index(std::span<const NormalizedPoint> points);

// Run settings used to check that compared reports differ on one axis only.
struct RunSettings {
  std::string network;
  double demand_veh_per_hr = 0.0;
  int duration_steps = 0;

  bool operator==(const RunSettings&) const = default;
};

struct VulnerabilityReport {
  std::string label;
  RunSettings settings;
  std::vector<ObjectivePair> frontier;
  std::vector<NormalizedPoint> normalized;
  std::optional<double> m;
  std::optional<double> concavity;
  std::int64_t z1_max = 0;  // largest |z1|
  std::int64_t z2_max = 0;
};

VulnerabilityReport make_report(std::string label, RunSettings settings,
                                std::span<const ObjectivePair> frontier);

// Largest vertical gap between two normalized piecewise-linear curves,
// evaluated at the union of their breakpoints. Absent for degenerate curves.
std::optional<double> shape_distance(std::span<const NormalizedPoint> a,
                                     std::span<const NormalizedPoint> b);

enum class CompareAxis { network, demand, duration };

struct ComparisonTable {
  CompareAxis axis = CompareAxis::network;
  std::vector<VulnerabilityReport> rows;                    // sorted by label
  std::vector<std::vector<std::optional<double>>> distance;  // pairwise shape distance

  std::optional<double> max_distance() const;
};

// Throws InputError for fewer than two reports or when reports differ on an
// axis other than `axis`.
ComparisonTable compare(std::vector<VulnerabilityReport> reports, CompareAxis axis);

CompareAxis parse_compare_axis(const std::string& text);
std::string to_string(CompareAxis axis);

}  // namespace sigtamp
