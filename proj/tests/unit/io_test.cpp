#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sigtamp/errors.hpp"
#include "sigtamp/exporters.hpp"
#include "sigtamp/network_io.hpp"
#include "sigtamp/scenarios.hpp"
#include "support.hpp"

namespace sigtamp {
namespace {

const std::string kData = SIGTAMP_TEST_DATA;

TEST(NetworkJson, RoundTripsEveryGenerator) {
  const RoadNetwork nets[] = {generate_regular_grid(GridKind::A), generate_irregular(3), generate_crossing(1),
                              testing::toy_double_crossing()};
  for (const RoadNetwork& net : nets) {
    const RoadNetwork back = network_from_json(network_to_json(net));
    EXPECT_EQ(back, net) << net.name;
    EXPECT_EQ(network_to_json(back), network_to_json(net));
  }
}

TEST(NetworkJson, FileRoundTripAndBadInput) {
  const auto path = std::filesystem::temp_directory_path() / "sigtamp_io_test_network.json";
  const RoadNetwork net = testing::toy_crossing(1, 3, true);
  save_network(net, path);
  EXPECT_EQ(load_network(path), net);
  std::filesystem::remove(path);

  EXPECT_EQ(load_network(kData + "/crossing_network.json"), testing::toy_crossing(0));
  EXPECT_THROW(network_from_json("not json"), InputError);
  EXPECT_THROW(network_from_json(R"({"cells": 3})"), InputError);
  EXPECT_THROW(network_from_json(R"({"cells": [{"id": "a", "kind": "pond"}]})"), InputError);
  EXPECT_THROW(load_network(kData + "/missing.json"), InputError);
}

TEST(FrontierCsv, RoundTripAndDeterminism) {
  const std::vector<FrontierRow> rows{{0, -3, 0}, {4, -9, 2}, {11, -12, 1}};
  std::ostringstream a;
  std::ostringstream b;
  write_frontier_csv(a, rows);
  write_frontier_csv(b, rows);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), "z2,z1,abs_z1,witness_id\n0,-3,3,0\n4,-9,9,2\n11,-12,12,1\n");
  std::istringstream in(a.str());
  EXPECT_EQ(read_frontier_csv(in), rows);
}

TEST(FrontierCsv, RejectsMalformedFiles) {
  std::ifstream inconsistent(kData + "/inconsistent_frontier.csv");
  EXPECT_THROW(read_frontier_csv(inconsistent), InputError);
  std::istringstream no_header("0,0,0,0\n");
  EXPECT_THROW(read_frontier_csv(no_header), InputError);
  std::istringstream short_row("z2,z1,abs_z1,witness_id\n1,2\n");
  EXPECT_THROW(read_frontier_csv(short_row), InputError);
  std::ifstream good(kData + "/two_point_frontier.csv");
  EXPECT_EQ(read_frontier_csv(good).size(), 2u);
}

TEST(ReportCsv, HeaderOnlyAndFormatting) {
  std::ostringstream empty;
  write_report_csv(empty, {});
  EXPECT_EQ(empty.str(), "label,m,concavity_index,n_points,z1_max,z2_max\n");

  const std::vector<VulnerabilityReport> reports{
      make_report("two", {}, std::vector<ObjectivePair>{{0, 0}, {-10, 5}}),
      make_report("one", {}, std::vector<ObjectivePair>{{-4, 0}})};
  std::ostringstream out;
  write_report_csv(out, reports);
  EXPECT_EQ(out.str(), "label,m,concavity_index,n_points,z1_max,z2_max\ntwo,1,0.5,2,10,5\none,,,1,4,0\n");

  std::ostringstream norm;
  write_normalized_csv(norm, make_report("x", {}, std::vector<ObjectivePair>{{0, 0}, {-2, 1}, {-3, 3}}));
  EXPECT_EQ(norm.str(), "z2_norm,abs_z1_norm\n0,0\n0.333333333333,0.666666666667\n1,1\n");
}

TEST(ScheduleCsv, OneRowPerGroupAndStep) {
  SignalSchedule s;
  s.group_ids = {"x"};
  s.grants = {{{{"a", "b"}}, {}}};
  std::ostringstream out;
  write_schedule_csv(out, s);
  EXPECT_EQ(out.str(), "group_id,t,granted_movement\nx,0,a>b\nx,1,none\n");
}

TEST(WriteFile, CreatesParentsAndFailsOnDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "sigtamp_io_test_dir";
  std::filesystem::remove_all(dir);
  write_file(dir / "a" / "b.txt", "hello\n");
  std::ifstream in(dir / "a" / "b.txt");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "hello");
  EXPECT_THROW(write_file(dir / "a", "x"), InputError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sigtamp
