#include "sigtamp/vulnerability.hpp"

#include <algorithm>
#include <cmath>

#include "sigtamp/errors.hpp"

namespace sigtamp {

std::vector<NormalizedPoint> normalize(std::span<const ObjectivePair> frontier) {
  if (frontier.empty()) return {};
  std::vector<ObjectivePair> sorted(frontier.begin(), frontier.end());
  std::sort(sorted.begin(), sorted.end(), [](const ObjectivePair& a, const ObjectivePair& b) {
    return a.z2 != b.z2 ? a.z2 < b.z2 : a.z1 > b.z1;
  });
  std::int64_t z2_max = 0;
  std::int64_t impact_max = 0;
  for (const ObjectivePair& p : sorted) {
    z2_max = std::max(z2_max, p.z2);
    impact_max = std::max(impact_max, std::abs(p.z1));
  }
  if (z2_max == 0 || impact_max == 0) return {NormalizedPoint{0.0, 0.0}};
  std::vector<NormalizedPoint> out;
  out.reserve(sorted.size());
  for (const ObjectivePair& p : sorted) {
    out.push_back({static_cast<double>(p.z2) / static_cast<double>(z2_max),
                   static_cast<double>(std::abs(p.z1)) / static_cast<double>(impact_max)});
  }
  return out;
}

std::optional<double> slope_at_origin(std::span<const NormalizedPoint> points) {
  if (points.size() < 2) return std::nullopt;
  const double run = points[1].z2 - points[0].z2;
  if (!(run > 0.0)) return std::nullopt;
  return (points[1].impact - points[0].impact) / run;
}

std::optional<double> concavity_index(std::span<const NormalizedPoint> points) {
  if (points.size() < 2) return std::nullopt;
  double area = 0.0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    area += (points[k].z2 - points[k - 1].z2) * (points[k].impact + points[k - 1].impact) / 2.0;
  }
  return area;
}

VulnerabilityReport make_report(std::string label, RunSettings settings,
                                std::span<const ObjectivePair> frontier) {
  VulnerabilityReport r;
  r.label = std::move(label);
  r.settings = std::move(settings);
  r.frontier.assign(frontier.begin(), frontier.end());
  r.normalized = normalize(frontier);
  r.m = slope_at_origin(r.normalized);
  r.concavity = concavity_index(r.normalized);
  for (const ObjectivePair& p : frontier) {
    r.z1_max = std::max(r.z1_max, std::abs(p.z1));
    r.z2_max = std::max(r.z2_max, p.z2);
  }
  return r;
}

namespace {

double interpolate(std::span<const NormalizedPoint> curve, double x) {
  if (x <= curve.front().z2) return curve.front().impact;
  if (x >= curve.back().z2) return curve.back().impact;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    if (x <= curve[k].z2) {
      const NormalizedPoint& a = curve[k - 1];
      const NormalizedPoint& b = curve[k];
      if (b.z2 == a.z2) return b.impact;
      return a.impact + (b.impact - a.impact) * (x - a.z2) / (b.z2 - a.z2);
    }
  }
  return curve.back().impact;
}

}  // namespace

std::optional<double> shape_distance(std::span<const NormalizedPoint> a,
                                     std::span<const NormalizedPoint> b) {
  if (a.size() < 2 || b.size() < 2) return std::nullopt;
  double gap = 0.0;
  for (auto curve : {a, b}) {
    for (const NormalizedPoint& p : curve) {
      gap = std::max(gap, std::abs(interpolate(a, p.z2) - interpolate(b, p.z2)));
    }
  }
  return gap;
}

std::optional<double> ComparisonTable::max_distance() const {
  std::optional<double> best;
  for (const auto& row : distance) {
    for (const auto& d : row) {
      if (d && (!best || *d > *best)) best = d;
    }
  }
  return best;
}

ComparisonTable compare(std::vector<VulnerabilityReport> reports, CompareAxis axis) {
  if (reports.size() < 2) throw InputError("comparison needs at least two reports");
  const RunSettings& first = reports.front().settings;
  for (const VulnerabilityReport& r : reports) {
    const RunSettings& s = r.settings;
    const bool network_ok = axis == CompareAxis::network || s.network == first.network;
    const bool demand_ok = axis == CompareAxis::demand || s.demand_veh_per_hr == first.demand_veh_per_hr;
    const bool duration_ok = axis == CompareAxis::duration || s.duration_steps == first.duration_steps;
    if (!network_ok || !demand_ok || !duration_ok) {
      throw InputError("report '" + r.label + "' differs from '" + reports.front().label +
                       "' on an axis other than " + to_string(axis));
    }
  }
  std::sort(reports.begin(), reports.end(), [](const VulnerabilityReport& a, const VulnerabilityReport& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.settings.network != b.settings.network) return a.settings.network < b.settings.network;
    if (a.settings.demand_veh_per_hr != b.settings.demand_veh_per_hr) {
      return a.settings.demand_veh_per_hr < b.settings.demand_veh_per_hr;
    }
    return a.settings.duration_steps < b.settings.duration_steps;
  });
  ComparisonTable table;
  table.axis = axis;
  table.rows = std::move(reports);
  const std::size_t n = table.rows.size();
  table.distance.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) table.distance[i][j] = shape_distance(table.rows[i].normalized, table.rows[j].normalized);
    }
  }
  return table;
}

CompareAxis parse_compare_axis(const std::string& text) {
  if (text == "network") return CompareAxis::network;
  if (text == "demand") return CompareAxis::demand;
  if (text == "duration") return CompareAxis::duration;
  throw InputError("unknown comparison axis '" + text + "'");
}

std::string to_string(CompareAxis axis) {
  switch (axis) {
    case CompareAxis::network: return "network";
    case CompareAxis::demand: return "demand";
    case CompareAxis::duration: return "duration";
  }
  return "network";
}

}  // namespace sigtamp
