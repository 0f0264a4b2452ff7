#pragma once

// Plain-text exports. Every CSV has a header row, LF line endings and a
// fixed column order. Integers are printed exactly, floats with 12
// significant digits, absent values as empty fields.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigtamp/adversary.hpp"
#include "sigtamp/control.hpp"
#include "sigtamp/vulnerability.hpp"

namespace sigtamp {

std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);

struct FrontierRow {
  std::int64_t z2 = 0;
  std::int64_t z1 = 0;
  std::size_t witness_id = 0;

  bool operator==(const FrontierRow&) const = default;
};

std::vector<FrontierRow> frontier_rows(const ParetoFrontier& frontier);

// z2,z1,abs_z1,witness_id
void write_frontier_csv(std::ostream& out, std::span<const FrontierRow> rows);
std::vector<FrontierRow> read_frontier_csv(std::istream& in);

// label,m,concavity_index,n_points,z1_max,z2_max
void write_report_csv(std::ostream& out, std::span<const VulnerabilityReport> reports);

// z2_norm,abs_z1_norm
void write_normalized_csv(std::ostream& out, const VulnerabilityReport& report);

// label_a,label_b,shape_distance
void write_comparison_csv(std::ostream& out, const ComparisonTable& table);

// group_id,t,granted_movement
void write_schedule_csv(std::ostream& out, const SignalSchedule& schedule);

// One line per frontier-search event, key=value fields.
void write_provenance(std::ostream& out, const ParetoFrontier& frontier);

// Writes `text` to `path`, creating parent directories. Throws InputError
// when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sigtamp
