#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <thread>

#include <json.hpp>

#include "ctsbench/archive.hpp"
#include "ctsbench/bench.hpp"
#include "ctsbench/corpus.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"
#include "support.hpp"

using namespace ctsbench;

namespace {

CorpusSpec small_spec() {
  CorpusSpec s;
  s.n_designs = 2;
  s.placements_per_design = 2;
  s.cts_per_placement = 2;
  s.cells_min = 100;
  s.cells_max = 250;
  s.seed = 41;
  return s;
}

struct SmallCorpus {
  testutil::TempDir dir;
  CorpusIndex index;
  SmallCorpus() : index(generate_corpus(small_spec(), CoarsenConfig{}, dir.str(), 1)) {}
};

BenchConfig quick(std::size_t reps = 1) {
  BenchConfig cfg;
  cfg.repetitions = reps;
  cfg.jobs = 1;
  return cfg;
}

}  // namespace

TEST(Bench, Median) {
  EXPECT_EQ(median({}), 0.0);
  EXPECT_EQ(median({3.0}), 3.0);
  EXPECT_EQ(median({5.0, 1.0, 3.0}), 3.0);
  EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
}

TEST(Bench, RatiosMatchArchives) {
  SmallCorpus c;
  const EfficiencyReport report = run_benchmark(c.dir.str(), quick());
  ASSERT_EQ(report.rows.size(), 4u);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    const auto& plan = c.index.placements[i];
    EXPECT_EQ(row.design_name, plan.design_name);
    EXPECT_EQ(row.placement_id, plan.placement_id);

    // Independent recomputation from encoded archives.
    const GeneratedDesign d = realize(plan);
    const RawGraph raw_graph = build_raw_graph(d.netlist, d.activity);
    const ClusteredGraph cl_graph = build_clustered_graph(d.netlist, d.activity, coarsen_config_for(plan, {}));
    EXPECT_EQ(row.unclaimed_logic, cl_graph.unclaimed_logic);
    EXPECT_EQ(row.missing_activity, raw_graph.missing_activity);
    const auto raw = to_archive(raw_graph);
    const auto cl = to_archive(cl_graph);
    EXPECT_EQ(row.raw_nodes, raw.header.node_count);
    EXPECT_EQ(row.raw_edges, raw.header.edge_count);
    EXPECT_EQ(row.clustered_nodes, cl.header.node_count);
    EXPECT_EQ(row.clustered_edges, cl.header.edge_count);
    EXPECT_EQ(row.node_compression, double(raw.header.node_count) / double(cl.header.node_count));
    const std::size_t raw_bytes = encode_archive(raw).size();
    const std::size_t cl_bytes = encode_archive(cl).size();
    EXPECT_EQ(row.raw_bytes, raw_bytes);
    EXPECT_EQ(row.footprint_ratio, double(raw_bytes) / double(cl_bytes));
    const std::size_t rt = raw.header.node_count * 16 + raw.header.edge_count * 20;
    const std::size_t ct = cl.header.node_count * 40 + cl.header.edge_count * 20;
    EXPECT_EQ(row.raw_tensor_bytes, rt);
    EXPECT_EQ(row.clustered_tensor_bytes, ct);
    EXPECT_EQ(row.memory_ratio, double(rt) / double(ct));
    EXPECT_GE(row.clustered_nodes, 1u);
    EXPECT_LE(row.clustered_nodes, row.ff_count);
  }
}

TEST(Bench, NoMergeRatioIsRawOverFlipFlops) {
  SmallCorpus c;
  BenchConfig cfg = quick();
  cfg.thresholds.cos_threshold = 1.0;  // cosine > 1 never holds
  const auto report = run_benchmark(c.dir.str(), cfg);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.clustered_nodes, row.ff_count);
    EXPECT_EQ(row.node_compression, double(row.raw_nodes) / double(row.ff_count));
  }
}

TEST(Bench, RepetitionsOnlyAffectTimings) {
  SmallCorpus c;
  const auto one = run_benchmark(c.dir.str(), quick(1));
  const auto three = run_benchmark(c.dir.str(), quick(3));
  EXPECT_EQ(efficiency_csv(one), efficiency_csv(three));
  EXPECT_EQ(three.repetitions, 3u);
}

TEST(Bench, ParallelModeIsLabeledAndAgrees) {
  SmallCorpus c;
  BenchConfig cfg = quick();
  cfg.parallel = true;
  cfg.jobs = 3;
  const auto par = run_benchmark(c.dir.str(), cfg);
  const auto seq = run_benchmark(c.dir.str(), quick());
  EXPECT_EQ(par.mode(), "throughput");
  EXPECT_EQ(seq.mode(), "latency");
  EXPECT_EQ(efficiency_csv(par), efficiency_csv(seq));
  EXPECT_NE(report_table(par).find("throughput"), std::string::npos);
}

TEST(Bench, InjectedDelayRaisesEveryTiming) {
  SmallCorpus c;
  BenchConfig cfg = quick(3);
  cfg.inject_delay = [] { std::this_thread::sleep_for(std::chrono::milliseconds(20)); };
  const auto slow = run_benchmark(c.dir.str(), cfg);
  for (const auto& row : slow.rows) {
    EXPECT_GE(row.build_time_raw, 0.02);
    EXPECT_GE(row.build_time_clustered, 0.02);
    EXPECT_GE(row.coarsen_time, 0.02);
  }
  EXPECT_GE(slow.wall_time, 4 * 3 * 3 * 0.02);
}

TEST(Bench, WritesDataAndFigures) {
  SmallCorpus c;
  const auto report = run_benchmark(c.dir.str(), quick());
  testutil::TempDir out;
  write_report(report, out.str());
  for (const char* f : {"efficiency.csv", "efficiency.json", "timing/timings.csv", "timing/report.txt",
                        "compression_scatter.svg", "compression_scatter.csv", "efficiency_bars.svg",
                        "efficiency_bars.csv"}) {
    EXPECT_TRUE(std::filesystem::is_regular_file(out / f)) << f;
  }
  EXPECT_EQ(read_file(out / "efficiency.csv"), efficiency_csv(report));
  const auto json = nlohmann::json::parse(read_file(out / "efficiency.json"));
  EXPECT_EQ(json["placements"].size(), 4u);
  EXPECT_EQ(json["mode"], "latency");

  const std::string svg = read_file(out / "compression_scatter.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  const std::string bars = read_file(out / "efficiency_bars.csv");
  EXPECT_EQ(std::count(bars.begin(), bars.end(), '\n'), 5);  // header + 4 ratios
  const std::string scatter = read_file(out / "compression_scatter.csv");
  EXPECT_EQ(std::count(scatter.begin(), scatter.end(), '\n'), 5);  // header + 4 placements
}

TEST(Bench, ReportDataIsReproducible) {
  SmallCorpus c;
  testutil::TempDir a, b;
  write_report(run_benchmark(c.dir.str(), quick()), a.str());
  write_report(run_benchmark(c.dir.str(), quick()), b.str());
  for (const char* f : {"efficiency.csv", "efficiency.json", "compression_scatter.csv", "efficiency_bars.csv",
                        "compression_scatter.svg", "efficiency_bars.svg"}) {
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  }
}

TEST(Bench, Errors) {
  testutil::TempDir dir;
  EXPECT_THROW(run_benchmark(dir / "absent", quick()), IoError);
  EXPECT_THROW(plot_report(EfficiencyReport{}, dir.str()), InvariantError);
  SmallCorpus c;
  EXPECT_THROW(run_benchmark(c.dir.str(), quick(0)), InvariantError);
}
