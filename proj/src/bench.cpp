#include "ctsbench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "ctsbench/activity.hpp"
#include "ctsbench/archive.hpp"
#include "ctsbench/corpus.hpp"
#include "ctsbench/csv.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"
#include "ctsbench/netlist.hpp"
#include "ctsbench/raw_graph.hpp"

namespace ctsbench {

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double timed_median(const BenchConfig& cfg, Fn&& fn) {
  std::vector<double> samples;
  samples.reserve(cfg.repetitions);
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    const auto t0 = Clock::now();
    fn();
    if (cfg.inject_delay) cfg.inject_delay();
    samples.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return median(std::move(samples));
}

double ratio(std::size_t num, std::size_t den) {
  return static_cast<double>(num) / static_cast<double>(std::max<std::size_t>(den, 1));
}

std::size_t tensor_bytes(const GraphArchive& a) {
  return a.node_features.size() * sizeof(float) + a.edge_index.size() * sizeof(std::int64_t) +
         a.edge_weights.size() * sizeof(float);
}

EfficiencyRow measure(const std::string& corpus_dir, const PlacementPlan& plan, const CoarsenConfig& thresholds,
                      const BenchConfig& cfg) {
  const auto root = std::filesystem::path(corpus_dir);
  const PlacedNetlist netlist = read_netlist_file((root / plan.netlist_path()).string());
  const ActivityMap activity = read_activity_file((root / plan.activity_path()).string());
  const CoarsenConfig ccfg = coarsen_config_for(plan, thresholds);

  const RawGraph raw = build_raw_graph(netlist, activity);
  const ClusteredGraph clustered = build_clustered_graph(netlist, activity, ccfg);
  const GraphArchive raw_a = to_archive(raw);
  const GraphArchive cl_a = to_archive(clustered);

  EfficiencyRow row;
  row.design_name = plan.design_name;
  row.placement_id = plan.placement_id;
  row.ff_count = clustered.atomic_count;
  row.raw_nodes = raw.nodes.size();
  row.raw_edges = raw.edges.size();
  row.clustered_nodes = clustered.nodes.size();
  row.clustered_edges = clustered.edges.size();
  row.unclaimed_logic = clustered.unclaimed_logic;
  row.missing_activity = raw.missing_activity;
  row.node_compression = ratio(row.raw_nodes, row.clustered_nodes);
  row.edge_compression = ratio(row.raw_edges, row.clustered_edges);
  row.raw_bytes = encode_archive(raw_a).size();
  row.clustered_bytes = encode_archive(cl_a).size();
  row.footprint_ratio = ratio(row.raw_bytes, row.clustered_bytes);
  row.raw_tensor_bytes = tensor_bytes(raw_a);
  row.clustered_tensor_bytes = tensor_bytes(cl_a);
  row.memory_ratio = ratio(row.raw_tensor_bytes, row.clustered_tensor_bytes);

  row.build_time_raw = timed_median(cfg, [&] { (void)build_raw_graph(netlist, activity); });
  row.build_time_clustered = timed_median(cfg, [&] { (void)build_clustered_graph(netlist, activity, ccfg); });
  row.coarsen_time = timed_median(cfg, [&] {
    const AtomicClustering atomics = form_atomic_clusters(netlist, ccfg.seed);
    (void)merge_clusters(atomics, ccfg, netlist, activity);
  });
  return row;
}

}  // namespace

double median(std::vector<double> samples) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  return n % 2 == 1 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2.0;
}

std::map<std::string, Stat> EfficiencyReport::aggregates() const {
  const std::pair<const char*, double EfficiencyRow::*> metrics[] = {
      {"node_compression", &EfficiencyRow::node_compression},
      {"edge_compression", &EfficiencyRow::edge_compression},
      {"footprint_ratio", &EfficiencyRow::footprint_ratio},
      {"memory_ratio", &EfficiencyRow::memory_ratio},
      {"build_time_raw", &EfficiencyRow::build_time_raw},
      {"build_time_clustered", &EfficiencyRow::build_time_clustered},
      {"coarsen_time", &EfficiencyRow::coarsen_time},
  };
  std::map<std::string, Stat> out;
  if (rows.empty()) return out;
  for (const auto& [name, field] : metrics) {
    Stat s{0.0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& r : rows) {
      s.mean += r.*field;
      s.min = std::min(s.min, r.*field);
      s.max = std::max(s.max, r.*field);
    }
    s.mean /= static_cast<double>(rows.size());
    out.emplace(name, s);
  }
  return out;
}

EfficiencyReport run_benchmark(const std::string& corpus_dir, const BenchConfig& cfg) {
  if (!std::filesystem::is_directory(corpus_dir)) throw IoError("corpus directory not found: " + corpus_dir);
  if (cfg.repetitions < 1) throw InvariantError("repetitions must be >= 1");
  cfg.thresholds.validate();
  const CorpusIndex index = read_corpus_index(corpus_dir);

  EfficiencyReport report;
  report.throughput_mode = cfg.parallel;
  report.repetitions = cfg.repetitions;
  report.rows.resize(index.placements.size());
  const auto t0 = Clock::now();
  parallel_for(index.placements.size(), cfg.parallel ? cfg.jobs : 1, [&](std::size_t i) {
    report.rows[i] = measure(corpus_dir, index.placements[i], cfg.thresholds, cfg);
  });
  report.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
  return report;
}

std::string efficiency_csv(const EfficiencyReport& report) {
  using csv::format_double;
  std::string out =
      "design_name,placement_id,ff_count,raw_nodes,raw_edges,clustered_nodes,clustered_edges,"
      "node_compression,edge_compression,raw_bytes,clustered_bytes,footprint_ratio,"
      "raw_tensor_bytes,clustered_tensor_bytes,memory_ratio,unclaimed_logic,missing_activity\n";
  for (const auto& r : report.rows) {
    out += csv::join({r.design_name, r.placement_id, std::to_string(r.ff_count), std::to_string(r.raw_nodes),
                      std::to_string(r.raw_edges), std::to_string(r.clustered_nodes),
                      std::to_string(r.clustered_edges), format_double(r.node_compression),
                      format_double(r.edge_compression), std::to_string(r.raw_bytes),
                      std::to_string(r.clustered_bytes), format_double(r.footprint_ratio),
                      std::to_string(r.raw_tensor_bytes), std::to_string(r.clustered_tensor_bytes),
                      format_double(r.memory_ratio), std::to_string(r.unclaimed_logic),
                      std::to_string(r.missing_activity)}) +
           "\n";
  }
  return out;
}

std::string efficiency_json(const EfficiencyReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"design_name", r.design_name},
                    {"placement_id", r.placement_id},
                    {"ff_count", r.ff_count},
                    {"raw_nodes", r.raw_nodes},
                    {"raw_edges", r.raw_edges},
                    {"clustered_nodes", r.clustered_nodes},
                    {"clustered_edges", r.clustered_edges},
                    {"node_compression", r.node_compression},
                    {"edge_compression", r.edge_compression},
                    {"raw_bytes", r.raw_bytes},
                    {"clustered_bytes", r.clustered_bytes},
                    {"footprint_ratio", r.footprint_ratio},
                    {"raw_tensor_bytes", r.raw_tensor_bytes},
                    {"clustered_tensor_bytes", r.clustered_tensor_bytes},
                    {"memory_ratio", r.memory_ratio},
                    {"unclaimed_logic", r.unclaimed_logic},
                    {"missing_activity", r.missing_activity}});
  }
  nlohmann::json agg = nlohmann::json::object();
  for (const auto& [name, s] : report.aggregates()) {
    if (name.find("time") != std::string::npos) continue;
    agg[name] = {{"mean", s.mean}, {"min", s.min}, {"max", s.max}};
  }
  const nlohmann::json doc = {{"mode", report.mode()},
                              {"repetitions", report.repetitions},
                              {"placements", rows},
                              {"aggregates", agg}};
  return doc.dump(1) + "\n";
}

std::string timings_csv(const EfficiencyReport& report) {
  using csv::format_double;
  std::string out = "mode,design_name,placement_id,build_time_raw,build_time_clustered,coarsen_time\n";
  for (const auto& r : report.rows) {
    out += csv::join({report.mode(), r.design_name, r.placement_id, format_double(r.build_time_raw),
                      format_double(r.build_time_clustered), format_double(r.coarsen_time)}) +
           "\n";
  }
  return out;
}

std::string report_table(const EfficiencyReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "mode: %s, repetitions: %zu, placements: %zu, wall time: %.3f s\n",
                report.mode().c_str(), report.repetitions, report.rows.size(), report.wall_time);
  out += line;
  std::snprintf(line, sizeof line, "%-8s %-6s %8s %8s %7s %7s %7s %7s %7s %9s %10s %10s\n", "design", "place",
                "raw_n", "raw_e", "cl_n", "cl_e", "n_cmp", "e_cmp", "bytes", "unclaimed", "t_raw_ms", "t_cl_ms");
  out += line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-8s %-6s %8zu %8zu %7zu %7zu %7.2f %7.2f %7.2f %9zu %10.3f %10.3f\n",
                  r.design_name.c_str(), r.placement_id.c_str(), r.raw_nodes, r.raw_edges, r.clustered_nodes,
                  r.clustered_edges, r.node_compression, r.edge_compression, r.footprint_ratio, r.unclaimed_logic,
                  r.build_time_raw * 1e3, r.build_time_clustered * 1e3);
    out += line;
  }
  for (const auto& [name, s] : report.aggregates()) {
    std::snprintf(line, sizeof line, "%-22s mean %12.6g  min %12.6g  max %12.6g\n", name.c_str(), s.mean, s.min,
                  s.max);
    out += line;
  }
  return out;
}

void write_report(const EfficiencyReport& report, const std::string& out_dir) {
  const auto root = std::filesystem::path(out_dir);
  plot_report(report, out_dir);
  write_file((root / "efficiency.csv").string(), efficiency_csv(report));
  write_file((root / "efficiency.json").string(), efficiency_json(report));
  write_file((root / "timing" / "timings.csv").string(), timings_csv(report));
  write_file((root / "timing" / "report.txt").string(), report_table(report));
}

}  // namespace ctsbench
