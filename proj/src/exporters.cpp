#include "sigtamp/exporters.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sigtamp/errors.hpp"

namespace sigtamp {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::vector<FrontierRow> frontier_rows(const ParetoFrontier& frontier) {
  std::vector<FrontierRow> rows;
  for (const ParetoPoint& p : frontier.points) rows.push_back({p.z2, p.z1, p.witness_id});
  return rows;
}

void write_frontier_csv(std::ostream& out, std::span<const FrontierRow> rows) {
  out << "z2,z1,abs_z1,witness_id\n";
  for (const FrontierRow& r : rows) {
    out << r.z2 << ',' << r.z1 << ',' << (r.z1 < 0 ? -r.z1 : r.z1) << ',' << r.witness_id << '\n';
  }
}

std::vector<FrontierRow> read_frontier_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("z2,z1,abs_z1,witness_id", 0) != 0) {
    throw InputError("frontier CSV must start with the header z2,z1,abs_z1,witness_id");
  }
  std::vector<FrontierRow> rows;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    FrontierRow r;
    long long abs_z1 = 0;
    char c1 = 0;
    char c2 = 0;
    char c3 = 0;
    if (!(fields >> r.z2 >> c1 >> r.z1 >> c2 >> abs_z1 >> c3 >> r.witness_id) || c1 != ',' || c2 != ',' ||
        c3 != ',') {
      throw InputError("frontier CSV line " + std::to_string(number) + " is malformed");
    }
    if (abs_z1 != (r.z1 < 0 ? -r.z1 : r.z1)) {
      throw InputError("frontier CSV line " + std::to_string(number) + " has inconsistent abs_z1");
    }
    rows.push_back(r);
  }
  return rows;
}

void write_report_csv(std::ostream& out, std::span<const VulnerabilityReport> reports) {
  out << "label,m,concavity_index,n_points,z1_max,z2_max\n";
  for (const VulnerabilityReport& r : reports) {
    out << r.label << ',' << format_optional(r.m) << ',' << format_optional(r.concavity) << ','
        << r.frontier.size() << ',' << r.z1_max << ',' << r.z2_max << '\n';
  }
}

void write_normalized_csv(std::ostream& out, const VulnerabilityReport& report) {
  out << "z2_norm,abs_z1_norm\n";
  for (const NormalizedPoint& p : report.normalized) {
    out << format_double(p.z2) << ',' << format_double(p.impact) << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const ComparisonTable& table) {
  out << "label_a,label_b,shape_distance\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = i + 1; j < table.rows.size(); ++j) {
      out << table.rows[i].label << ',' << table.rows[j].label << ','
          << format_optional(table.distance[i][j]) << '\n';
    }
  }
}

void write_schedule_csv(std::ostream& out, const SignalSchedule& schedule) {
  out << "group_id,t,granted_movement\n";
  for (std::size_t g = 0; g < schedule.grants.size(); ++g) {
    for (std::size_t t = 0; t < schedule.grants[g].size(); ++t) {
      out << schedule.group_ids[g] << ',' << t << ',' << schedule.label(g, t) << '\n';
    }
  }
}

void write_provenance(std::ostream& out, const ParetoFrontier& frontier) {
  for (const ProvenanceEntry& e : frontier.provenance) {
    if (e.kind == ProvenanceEntry::Kind::endpoint) {
      out << "endpoint";
    } else {
      out << "segment left=" << e.segment.left << " right=" << e.segment.right << " w1=" << e.segment.w1
          << " w2=" << e.segment.w2;
    }
    out << " z1=" << e.candidate.z1 << " z2=" << e.candidate.z2
        << " accepted=" << (e.accepted ? "yes" : "no");
    if (e.accepted) out << " witness=" << e.candidate_id;
    out << " note=\"" << e.note << "\"\n";
  }
  out << "solves=" << frontier.solves << " points=" << frontier.points.size()
      << " final_segments=" << frontier.final_segments.size() << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed while writing " + path.string());
}

}  // namespace sigtamp
