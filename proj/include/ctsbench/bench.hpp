#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ctsbench/coarsen.hpp"
#include "ctsbench/parallel.hpp"

namespace ctsbench {

struct BenchConfig {
  CoarsenConfig thresholds;  // seed ignored; each placement uses its corpus seed
  std::size_t repetitions = 5;
  // Placements run concurrently on `jobs` threads; timings then describe
  // throughput rather than isolated latency and the report says so.
  bool parallel = false;
  std::size_t jobs = default_jobs();
  // Test hook: called once inside every timed region.
  std::function<void()> inject_delay;
};

// One placement. Ratio denominators are clamped to 1 so a graph without edges
// still yields a finite edge ratio.
struct EfficiencyRow {
  std::string design_name;
  std::string placement_id;
  std::size_t ff_count = 0;
  std::size_t raw_nodes = 0;
  std::size_t raw_edges = 0;
  std::size_t clustered_nodes = 0;
  std::size_t clustered_edges = 0;
  std::size_t unclaimed_logic = 0;   // logic no flip-flop cone reaches
  std::size_t missing_activity = 0;  // raw nodes without an activity entry
  double node_compression = 0.0;  // raw_nodes / clustered_nodes
  double edge_compression = 0.0;  // raw_edges / clustered_edges
  std::size_t raw_bytes = 0;      // encoded .ctsg size
  std::size_t clustered_bytes = 0;
  double footprint_ratio = 0.0;  // raw_bytes / clustered_bytes
  std::size_t raw_tensor_bytes = 0;  // f32 features + i64 edge index + f32 weights
  std::size_t clustered_tensor_bytes = 0;
  double memory_ratio = 0.0;
  double build_time_raw = 0.0;  // seconds, median over repetitions
  double build_time_clustered = 0.0;
  double coarsen_time = 0.0;  // atomic clustering + merging only
};

struct Stat {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct EfficiencyReport {
  bool throughput_mode = false;
  std::size_t repetitions = 0;
  double wall_time = 0.0;  // whole benchmark, seconds
  std::vector<EfficiencyRow> rows;  // corpus order

  std::string mode() const { return throughput_mode ? "throughput" : "latency"; }
  // Keys: node_compression, edge_compression, footprint_ratio, memory_ratio,
  // build_time_raw, build_time_clustered, coarsen_time.
  std::map<std::string, Stat> aggregates() const;
};

// Median of the samples; mean of the middle two for an even count.
double median(std::vector<double> samples);

// Benchmarks every placement listed in `<corpus_dir>/corpus.json`.
// Throws IoError if the directory does not exist.
EfficiencyReport run_benchmark(const std::string& corpus_dir, const BenchConfig& cfg);

// Deterministic part (counts, sizes, ratios); identical for equal corpora.
std::string efficiency_csv(const EfficiencyReport& report);
std::string efficiency_json(const EfficiencyReport& report);
// Timings; vary run to run.
std::string timings_csv(const EfficiencyReport& report);
std::string report_table(const EfficiencyReport& report);

// Writes efficiency.csv, efficiency.json, timing/timings.csv, timing/report.txt
// and the figures (see plot_report) under `out_dir`.
void write_report(const EfficiencyReport& report, const std::string& out_dir);

// compression_scatter.{svg,csv}: raw vs clustered nodes per placement.
// efficiency_bars.{svg,csv}: mean with min/max of the four ratios.
// Returns the written paths. Throws InvariantError on an empty report.
std::vector<std::string> plot_report(const EfficiencyReport& report, const std::string& out_dir);

}  // namespace ctsbench
