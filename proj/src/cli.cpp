#include "sigtamp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sigtamp/adversary.hpp"
#include "sigtamp/control.hpp"
#include "sigtamp/errors.hpp"
#include "sigtamp/exporters.hpp"
#include "sigtamp/network_io.hpp"
#include "sigtamp/oracle.hpp"
#include "sigtamp/scenarios.hpp"
#include "sigtamp/supergraph.hpp"
#include "sigtamp/vulnerability.hpp"

namespace sigtamp::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

struct Manifest {
  Json root;
  fs::path dir;

  Manifest(fs::path out_dir, const std::vector<std::string>& args) : dir(std::move(out_dir)) {
    root["tool"] = "sigtamp";
    root["version"] = kVersion;
    std::string line = "sigtamp";
    for (const std::string& a : args) line += " " + a;
    root["commands"] = Json::array({line});
    root["scenario"] = nullptr;
    root["seeds"] = Json::array();
    root["outputs"] = Json::array();
    root["timings_s"] = Json::object();
  }

  void output(const fs::path& path) { root["outputs"].push_back(fs::relative(path, dir).generic_string()); }
  void timing(const std::string& step, double seconds) { root["timings_s"][step] = seconds; }
  void write() {
    const fs::path path = dir / "manifest.json";
    write_file(path, root.dump(2) + "\n");
  }
};

std::string to_text(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return fs::path(flag);
  if (const char* env = std::getenv(kOutEnv); env && *env) return fs::path(env);
  return fs::path("out");
}

std::string demand_tag(double rate) {
  if (rate == std::floor(rate)) return std::to_string(static_cast<long long>(rate));
  return format_double(rate);
}

std::string run_label(const ScenarioConfig& c) {
  return c.network.generator + "-" + demand_tag(c.demand_veh_per_hr) + "-" + std::to_string(c.horizon_steps);
}

struct LoadedScenario {
  ScenarioConfig config;
  fs::path base_dir;
};

LoadedScenario load(const std::string& path, const std::optional<std::uint64_t>& seed) {
  if (path.empty()) throw InputError("--scenario is required");
  LoadedScenario s{load_scenario(path), fs::path(path).parent_path()};
  if (seed) s.config.network.seed = seed;
  if (s.config.network.generator == "D" && !s.config.network.seed) {
    throw InputError("network D needs a seed (scenario network.seed or --seed)");
  }
  return s;
}

Json degree_json(const DegreeSummary& d) {
  Json histogram = Json::array();
  for (const auto& [io, count] : d.in_out_histogram) {
    histogram.push_back({{"in", io.first}, {"out", io.second}, {"count", count}});
  }
  return {{"intersections", d.intersections}, {"uniform", d.uniform}, {"in_out", std::move(histogram)}};
}

OptimalSolution solve_control(const ScenarioConfig& config, const SuperGraph& graph) {
  OptimalSolution opt = optimal_control(graph);
  if (config.minimize_switches) opt = minimize_switches(opt, graph);
  return opt;
}

struct AttackOptions {
  bool witnesses = false;
  bool oracle_check = false;
  bool support_check = false;
  bool max_impact_only = false;
};

struct AttackResult {
  std::string label;
  RunSettings settings;
  std::vector<ObjectivePair> frontier;
  std::vector<fs::path> outputs;
  std::map<std::string, double> timings;
  bool invariant_failure = false;
  std::string failure;
};

RunSettings settings_of(const ScenarioConfig& c) {
  return RunSettings{c.network.generator, c.demand_veh_per_hr, c.horizon_steps};
}

// Runs one scenario's attack and writes its artifacts into `dir`.
AttackResult run_attack(const ScenarioConfig& config, const fs::path& base_dir, const fs::path& dir,
                        const AttackOptions& options) {
  AttackResult result;
  result.label = run_label(config);
  result.settings = settings_of(config);
  Stopwatch watch;
  const Instance inst = build_instance(config, base_dir);
  result.timings["expand"] = watch.lap();
  const OptimalSolution opt = solve_control(config, inst.graph);
  result.timings["optimal_control"] = watch.lap();

  Json meta;
  meta["label"] = result.label;
  meta["scenario"] = Json::parse(scenario_to_json(config));
  meta["network"] = config.network.generator;
  meta["demand_veh_per_hr"] = config.demand_veh_per_hr;
  meta["duration_steps"] = config.horizon_steps;
  meta["total_demand"] = inst.graph.total_demand;
  meta["optimal_throughput"] = opt.throughput_curve.back();
  meta["optimal_travel_time"] = opt.total_travel_time;
  meta["conflict_arcs"] = inst.graph.conflict_arcs.size();

  fs::create_directories(dir);
  if (options.max_impact_only) {
    const ParetoPoint p = max_impact_point(inst.graph, opt, {options.witnesses});
    result.timings["max_impact"] = watch.lap();
    result.frontier = {{p.z1, p.z2}};
    meta["max_impact"] = {{"z1", p.z1}, {"z2", p.z2}};
  } else {
    const ParetoFrontier frontier = pareto_frontier(inst.graph, opt, {options.witnesses});
    result.timings["frontier"] = watch.lap();
    result.frontier = frontier.pairs();
    const AuditReport audit = frontier_audit(frontier);
    meta["points"] = frontier.points.size();
    meta["solves"] = frontier.solves;
    meta["audit"] = {{"ok", audit.ok()}, {"violations", audit.violations}};
    if (!audit.ok()) {
      result.invariant_failure = true;
      result.failure = "frontier audit failed: " + audit.violations.front();
    }
    if (options.support_check) {
      const AuditReport support = support_check(frontier, inst.graph);
      result.timings["support_check"] = watch.lap();
      meta["support_check"] = {{"ok", support.ok()}, {"violations", support.violations}};
      if (!support.ok() && !result.invariant_failure) {
        result.invariant_failure = true;
        result.failure = "weighted-sum support check failed: " + support.violations.front();
      }
    }
    if (options.oracle_check) {
      Json oracle;
      try {
        const auto expected = brute_force_frontier(inst.graph, frontier.encoding);
        const bool equal = expected == frontier.pairs();
        oracle = {{"checked", true}, {"equal", equal}};
        if (!equal && !result.invariant_failure) {
          result.invariant_failure = true;
          result.failure = "frontier differs from the exhaustive oracle";
        }
      } catch (const InputError& e) {
        oracle = {{"checked", false}, {"reason", e.what()}};
      }
      result.timings["oracle_check"] = watch.lap();
      meta["oracle_check"] = std::move(oracle);
    }
    write_file(dir / "provenance.txt", to_text([&](std::ostream& o) { write_provenance(o, frontier); }));
    result.outputs.push_back(dir / "provenance.txt");
    if (options.witnesses) {
      for (const ParetoPoint& p : frontier.points) {
        const std::string id = "w" + std::to_string(p.witness_id);
        const fs::path flow_path = dir / "witnesses" / (id + ".edges");
        const fs::path sched_path = dir / "witnesses" / (id + ".schedule.csv");
        write_file(flow_path, to_text([&](std::ostream& o) { write_edge_list(o, inst.graph, p.witness->arc_flow); }));
        write_file(sched_path, to_text([&](std::ostream& o) { write_schedule_csv(o, *p.schedule); }));
        result.outputs.push_back(flow_path);
        result.outputs.push_back(sched_path);
      }
    }
    const std::vector<FrontierRow> rows = frontier_rows(frontier);
    write_file(dir / "frontier.csv", to_text([&](std::ostream& o) { write_frontier_csv(o, rows); }));
    result.outputs.push_back(dir / "frontier.csv");
  }
  write_file(dir / "frontier.meta.json", meta.dump(2) + "\n");
  result.outputs.push_back(dir / "frontier.meta.json");
  return result;
}

std::vector<double> parse_numbers(const std::string& list) {
  std::vector<double> values;
  std::stringstream s(list);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("'" + item + "' is not a number");
    }
  }
  return values;
}

std::vector<std::string> parse_words(const std::string& list) {
  std::vector<std::string> words;
  std::stringstream s(list);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (!item.empty()) words.push_back(item);
  }
  return words;
}

// ---------------------------------------------------------------------------
// Subcommands

struct Flags {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool oracle_check = false;
};

int cmd_generate(const Flags& f, const std::string& kind, int steps, double demand, std::string name,
                 const std::vector<std::string>& args, std::ostream& out) {
  Stopwatch watch;
  ScenarioConfig config;
  if (!f.scenario.empty()) {
    config = load(f.scenario, f.seed).config;
  } else {
    config.network.generator = kind;
    config.network.seed = f.seed;
    config.horizon_steps = steps;
    config.demand_veh_per_hr = demand;
    config.name = name.empty() ? run_label(config) : std::move(name);
    if (kind == "D" && !f.seed) throw InputError("network D needs --seed");
  }
  const fs::path dir = output_dir(f.out);
  const RoadNetwork network = build_network(config, f.scenario.empty() ? fs::path() : fs::path(f.scenario).parent_path());
  Manifest manifest(dir, args);
  if (config.network.seed) manifest.root["seeds"].push_back(*config.network.seed);
  write_file(dir / "network.json", network_to_json(network));
  write_file(dir / "scenario.json", scenario_to_json(config));
  manifest.output(dir / "network.json");
  manifest.output(dir / "scenario.json");
  manifest.timing("generate", watch.lap());
  manifest.write();
  const DegreeSummary degrees = degree_statistics(network);
  out << "network " << network.name << ": " << network.cells.size() << " cells, " << degrees.intersections
      << " intersections, " << network.metadata.link_count << " links\n";
  return kOk;
}

int cmd_expand(const Flags& f, bool edges, const std::vector<std::string>& args, std::ostream& out) {
  Stopwatch watch;
  const LoadedScenario s = load(f.scenario, f.seed);
  const Instance inst = build_instance(s.config, s.base_dir);
  const fs::path dir = output_dir(f.out);
  Manifest manifest(dir, args);
  manifest.root["scenario"] = f.scenario;
  if (s.config.network.seed) manifest.root["seeds"].push_back(*s.config.network.seed);

  std::map<std::string, std::size_t> classes;
  for (const SuperArc& a : inst.graph.arcs) ++classes[to_string(a.cls)];
  Json stats{{"label", run_label(s.config)},
             {"steps", inst.graph.horizon.steps},
             {"delta_tau", inst.graph.horizon.delta_tau},
             {"sink_policy", to_string(inst.graph.sink_policy)},
             {"cells", inst.network.cells.size()},
             {"nodes", inst.graph.node_count()},
             {"arcs", inst.graph.arc_count()},
             {"expected_arcs", expected_arc_count(*inst.graph.topology, inst.graph.horizon, inst.graph.sink_policy)},
             {"arc_classes", classes},
             {"conflict_arcs", inst.graph.conflict_arcs.size()},
             {"total_demand", inst.graph.total_demand},
             {"incidence_check", incidence_check(inst.graph)},
             {"degrees", degree_json(degree_statistics(inst.network))}};
  write_file(dir / "expand.json", stats.dump(2) + "\n");
  manifest.output(dir / "expand.json");
  if (edges) {
    write_file(dir / "supergraph.edges", to_text([&](std::ostream& o) { write_edge_list(o, inst.graph); }));
    manifest.output(dir / "supergraph.edges");
  }
  manifest.timing("expand", watch.lap());
  manifest.write();
  out << "super-graph: " << inst.graph.node_count() << " nodes, " << inst.graph.arc_count() << " arcs, D = "
      << inst.graph.total_demand << "\n";
  return kOk;
}

int cmd_solve(const Flags& f, bool flows, const std::vector<std::string>& args, std::ostream& out) {
  Stopwatch watch;
  const LoadedScenario s = load(f.scenario, f.seed);
  const Instance inst = build_instance(s.config, s.base_dir);
  const fs::path dir = output_dir(f.out);
  Manifest manifest(dir, args);
  manifest.root["scenario"] = f.scenario;
  if (s.config.network.seed) manifest.root["seeds"].push_back(*s.config.network.seed);
  manifest.timing("expand", watch.lap());
  const OptimalSolution opt = solve_control(s.config, inst.graph);
  manifest.timing("optimal_control", watch.lap());
  if (!verify_optimality(inst.graph, travel_time_costs(inst.graph), opt.flow.arc_flow)) {
    throw InvariantError("optimal control flow fails the optimality certificate");
  }
  Json solution{{"label", run_label(s.config)},
                {"total_demand", inst.graph.total_demand},
                {"total_travel_time", opt.total_travel_time},
                {"throughput", opt.throughput_curve.back()},
                {"switches_raw", switch_count(fill_idle_steps(opt.raw_schedule))},
                {"switches", switch_count(opt.schedule)},
                {"throughput_curve", opt.throughput_curve}};
  write_file(dir / "solution.json", solution.dump(2) + "\n");
  write_file(dir / "schedule.csv", to_text([&](std::ostream& o) { write_schedule_csv(o, opt.schedule); }));
  write_file(dir / "schedule_raw.csv", to_text([&](std::ostream& o) { write_schedule_csv(o, opt.raw_schedule); }));
  manifest.output(dir / "solution.json");
  manifest.output(dir / "schedule.csv");
  manifest.output(dir / "schedule_raw.csv");
  if (flows) {
    write_file(dir / "flow.edges", to_text([&](std::ostream& o) { write_edge_list(o, inst.graph, opt.flow.arc_flow); }));
    manifest.output(dir / "flow.edges");
  }
  manifest.write();
  out << "travel time " << opt.total_travel_time << " vehicle-steps, throughput "
      << opt.throughput_curve.back() << " of " << inst.graph.total_demand << "\n";
  return kOk;
}

int finish_attack(const AttackResult& r, Manifest& manifest, std::ostream& out, std::ostream& err) {
  for (const fs::path& p : r.outputs) manifest.output(p);
  for (const auto& [step, seconds] : r.timings) manifest.timing(r.label + "/" + step, seconds);
  if (r.invariant_failure) {
    manifest.write();
    err << Json{{"error", "invariant_violation"}, {"message", r.failure}}.dump() << "\n";
    return kInternalError;
  }
  out << r.label << ": " << r.frontier.size() << " point(s)";
  if (!r.frontier.empty()) {
    const ObjectivePair& last = r.frontier.back();
    out << ", max impact z1 = " << last.z1 << " at z2 = " << last.z2;
  }
  out << "\n";
  return kOk;
}

int cmd_attack(const Flags& f, const AttackOptions& options, const std::vector<std::string>& args,
               std::ostream& out, std::ostream& err) {
  const LoadedScenario s = load(f.scenario, f.seed);
  const fs::path dir = output_dir(f.out);
  Manifest manifest(dir, args);
  manifest.root["scenario"] = f.scenario;
  if (s.config.network.seed) manifest.root["seeds"].push_back(*s.config.network.seed);
  const AttackResult r = run_attack(s.config, s.base_dir, dir, options);
  const int code = finish_attack(r, manifest, out, err);
  manifest.write();
  return code;
}

std::vector<VulnerabilityReport> reports_for(const std::vector<AttackResult>& results) {
  std::vector<VulnerabilityReport> reports;
  for (const AttackResult& r : results) reports.push_back(make_report(r.label, r.settings, r.frontier));
  return reports;
}

void write_reports(const fs::path& dir, const std::vector<VulnerabilityReport>& reports, Manifest& manifest) {
  write_file(dir / "vulnerability.csv", to_text([&](std::ostream& o) { write_report_csv(o, reports); }));
  manifest.output(dir / "vulnerability.csv");
  for (const VulnerabilityReport& r : reports) {
    const fs::path path = dir / "normalized" / (r.label + ".csv");
    write_file(path, to_text([&](std::ostream& o) { write_normalized_csv(o, r); }));
    manifest.output(path);
  }
}

int cmd_vuln(const Flags& f, const std::vector<std::string>& frontiers, const std::vector<std::string>& labels,
             const std::string& axis, const std::vector<std::string>& args, std::ostream& out) {
  if (frontiers.empty()) throw InputError("vuln needs at least one --frontier");
  if (!labels.empty() && labels.size() != frontiers.size()) {
    throw InputError("give one --label per --frontier or none");
  }
  const fs::path dir = output_dir(f.out);
  Manifest manifest(dir, args);
  std::vector<VulnerabilityReport> reports;
  for (std::size_t k = 0; k < frontiers.size(); ++k) {
    const fs::path path(frontiers[k]);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open frontier " + path.string());
    std::vector<ObjectivePair> pairs;
    for (const FrontierRow& r : read_frontier_csv(in)) pairs.push_back({r.z1, r.z2});
    RunSettings settings;
    std::string label = labels.empty() ? path.parent_path().filename().string() : labels[k];
    const fs::path meta_path = path.parent_path() / "frontier.meta.json";
    if (std::ifstream meta_in(meta_path); meta_in) {
      const Json meta = Json::parse(meta_in, nullptr, false);
      if (!meta.is_discarded()) {
        settings.network = meta.value("network", std::string());
        settings.demand_veh_per_hr = meta.value("demand_veh_per_hr", 0.0);
        settings.duration_steps = meta.value("duration_steps", 0);
        if (labels.empty()) label = meta.value("label", label);
      }
    }
    if (label.empty()) label = path.stem().string();
    reports.push_back(make_report(label, settings, pairs));
  }
  write_reports(dir, reports, manifest);
  if (!axis.empty()) {
    const ComparisonTable table = compare(reports, parse_compare_axis(axis));
    write_file(dir / "comparison.csv", to_text([&](std::ostream& o) { write_comparison_csv(o, table); }));
    manifest.output(dir / "comparison.csv");
  }
  manifest.write();
  for (const VulnerabilityReport& r : reports) {
    out << r.label << ": m = " << format_optional(r.m) << ", concavity = " << format_optional(r.concavity) << "\n";
  }
  return kOk;
}

int cmd_sweep(const Flags& f, const std::string& networks, const std::string& demands, const std::string& durations,
              const AttackOptions& options, const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  ScenarioConfig base;
  fs::path base_dir;
  if (!f.scenario.empty()) {
    const LoadedScenario s = load(f.scenario, f.seed);
    base = s.config;
    base_dir = s.base_dir;
  }
  const std::uint64_t seed = f.seed.value_or(base.network.seed.value_or(1));
  std::vector<ScenarioConfig> jobs;
  for (const std::string& net : parse_words(networks)) {
    for (double demand : parse_numbers(demands)) {
      for (double duration : parse_numbers(durations)) {
        ScenarioConfig c = base;
        c.network = NetworkSpec{};
        c.network.generator = net;
        if (net == "D") c.network.seed = seed;
        c.demand_veh_per_hr = demand;
        c.horizon_steps = static_cast<int>(duration);
        c.name = run_label(c);
        jobs.push_back(std::move(c));
      }
    }
  }
  if (jobs.empty()) throw InputError("sweep has no jobs");
  const fs::path dir = output_dir(f.out);
  Manifest manifest(dir, args);
  manifest.root["scenario"] = f.scenario.empty() ? Json(nullptr) : Json(f.scenario);
  manifest.root["seeds"].push_back(seed);

  std::vector<AttackResult> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        const fs::path job_dir = dir / jobs[k].name;
        fs::create_directories(job_dir);
        save_scenario(jobs[k], job_dir / "scenario.json");
        results[k] = run_attack(jobs[k], base_dir, job_dir, options);
        results[k].outputs.insert(results[k].outputs.begin(), job_dir / "scenario.json");
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(f.jobs, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  int code = kOk;
  for (const AttackResult& r : results) code = std::max(code, finish_attack(r, manifest, out, err));
  if (options.max_impact_only) {
    std::ostringstream csv;
    csv << "network,demand_veh_per_hr,duration_steps,z1,abs_z1,z2\n";
    for (const AttackResult& r : results) {
      const ObjectivePair& p = r.frontier.front();
      csv << r.settings.network << ',' << demand_tag(r.settings.demand_veh_per_hr) << ','
          << r.settings.duration_steps << ',' << p.z1 << ',' << -p.z1 << ',' << p.z2 << '\n';
    }
    write_file(dir / "impact.csv", csv.str());
    manifest.output(dir / "impact.csv");
  } else {
    write_reports(dir, reports_for(results), manifest);
  }
  manifest.write();
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signal tampering vulnerability analysis on time-expanded traffic flow graphs", "sigtamp"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Flags flags;
  auto add_common = [&](CLI::App* sub, bool scenario) {
    if (scenario) sub->add_option("--scenario", flags.scenario, "Scenario JSON file");
    sub->add_option("--out", flags.out, std::string("Output directory (default $") + kOutEnv + " or ./out)");
    sub->add_option("--seed", flags.seed, "Seed for the irregular network generator");
  };

  std::string kind = "A";
  int steps = 450;
  double demand = 400.0;
  std::string name;
  CLI::App* generate = app.add_subcommand("generate", "Write a network file and a scenario file");
  add_common(generate, true);
  generate->add_option("--kind", kind, "A, B, C, D or crossing")->check(CLI::IsMember({"A", "B", "C", "D", "crossing"}));
  generate->add_option("--steps", steps, "Horizon length in steps")->check(CLI::PositiveNumber);
  generate->add_option("--demand", demand, "Arrival rate per source in veh/hr")->check(CLI::NonNegativeNumber);
  generate->add_option("--name", name, "Scenario name");

  bool edges = false;
  CLI::App* expand_cmd = app.add_subcommand("expand", "Build the super-graph and report its size");
  add_common(expand_cmd, true);
  expand_cmd->add_flag("--edges", edges, "Also write the edge list");

  bool flows = false;
  CLI::App* solve = app.add_subcommand("solve-optimal", "Travel-time optimal control and its signal schedule");
  add_common(solve, true);
  solve->add_flag("--flows", flows, "Also write the optimal flow as an edge list");

  AttackOptions attack_options;
  CLI::App* attack = app.add_subcommand("attack", "Pareto frontier of impact versus noticeability");
  add_common(attack, true);
  attack->add_flag("--oracle-check", attack_options.oracle_check, "Compare with the exhaustive oracle when small enough");
  attack->add_flag("--witnesses", attack_options.witnesses, "Write one flow and schedule per frontier point");
  attack->add_flag("--support-check", attack_options.support_check, "Re-solve every final segment's weighted objective");
  attack->add_flag("--max-impact-only", attack_options.max_impact_only, "Only the maximum-impact endpoint");

  std::vector<std::string> frontiers;
  std::vector<std::string> labels;
  std::string axis;
  CLI::App* vuln = app.add_subcommand("vuln", "Slope at origin and concavity index of frontier CSVs");
  vuln->add_option("--frontier", frontiers, "Frontier CSV (repeatable)");
  vuln->add_option("--label", labels, "Label per frontier (repeatable)");
  vuln->add_option("--axis", axis, "Compare along network, demand or duration")
      ->check(CLI::IsMember({"network", "demand", "duration"}));
  vuln->add_option("--out", flags.out, "Output directory");

  std::string networks = "A,B,C,D";
  std::string demands = "400,800,1200";
  std::string durations = "450";
  AttackOptions sweep_options;
  CLI::App* sweep = app.add_subcommand("sweep", "Frontiers over networks x demands x durations");
  add_common(sweep, true);
  sweep->add_option("--networks", networks, "Comma-separated generators");
  sweep->add_option("--demands", demands, "Comma-separated veh/hr");
  sweep->add_option("--durations", durations, "Comma-separated horizon lengths in steps");
  sweep->add_option("--jobs", flags.jobs, "Concurrent scenario jobs")->check(CLI::PositiveNumber);
  sweep->add_flag("--oracle-check", sweep_options.oracle_check, "Compare with the exhaustive oracle when small enough");
  sweep->add_flag("--support-check", sweep_options.support_check, "Re-solve every final segment's weighted objective");
  sweep->add_flag("--max-impact-only", sweep_options.max_impact_only, "Only the maximum-impact endpoints");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << Json{{"error", "invalid_input"}, {"message", e.what()}}.dump() << "\n";
    return kInvalidInput;
  }

  try {
    if (*generate) return cmd_generate(flags, kind, steps, demand, name, args, out);
    if (*expand_cmd) return cmd_expand(flags, edges, args, out);
    if (*solve) return cmd_solve(flags, flows, args, out);
    if (*attack) return cmd_attack(flags, attack_options, args, out, err);
    if (*vuln) return cmd_vuln(flags, frontiers, labels, axis, args, out);
    if (*sweep) return cmd_sweep(flags, networks, demands, durations, sweep_options, args, out, err);
  } catch (const InputError& e) {
    err << Json{{"error", "invalid_input"}, {"message", e.what()}}.dump() << "\n";
    return kInvalidInput;
  } catch (const InvariantError& e) {
    err << Json{{"error", "invariant_violation"}, {"message", e.what()}}.dump() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return kInternalError;
  }
  return kInvalidInput;
}

}  // namespace sigtamp::cli
