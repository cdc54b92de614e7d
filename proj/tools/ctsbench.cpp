// ctsbench: corpus generation, graph building, gap scoring and benchmarking.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "ctsbench/activity.hpp"
#include "ctsbench/archive.hpp"
#include "ctsbench/bench.hpp"
#include "ctsbench/corpus.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/manifest.hpp"
#include "ctsbench/netlist.hpp"
#include "ctsbench/pipeline.hpp"
#include "ctsbench/raw_graph.hpp"

namespace {

using namespace ctsbench;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_seed(CLI::App* sub, std::uint64_t& seed) {
  sub->add_option("--seed", seed, "root seed (env CTSBENCH_SEED)")->envname("CTSBENCH_SEED")->capture_default_str();
}

void add_thresholds(CLI::App* sub, CoarsenConfig& cfg) {
  sub->add_option("--spread-threshold", cfg.spread_threshold, "spread above which an atomic cluster stays alone")
      ->capture_default_str();
  sub->add_option("--merge-distance", cfg.merge_distance, "merge bound on centroid Manhattan distance")
      ->capture_default_str();
  sub->add_option("--cos-threshold", cfg.cos_threshold, "merge bound on gravity cosine, in (-1, 1]")
      ->capture_default_str();
}

void add_spec(CLI::App* sub, CorpusSpec& spec) {
  sub->add_option("--designs", spec.n_designs, "number of designs")->capture_default_str();
  sub->add_option("--placements", spec.placements_per_design, "placements per design")->capture_default_str();
  sub->add_option("--cts", spec.cts_per_placement, "CTS variants per placement")->capture_default_str();
  sub->add_option("--cells-min", spec.cells_min, "smallest design size in cells")->capture_default_str();
  sub->add_option("--cells-max", spec.cells_max, "largest design size in cells")->capture_default_str();
  sub->add_option("--ff-min", spec.ff_fraction_min, "smallest flip-flop fraction")->capture_default_str();
  sub->add_option("--ff-max", spec.ff_fraction_max, "largest flip-flop fraction")->capture_default_str();
  add_seed(sub, spec.seed);
}

// Turns InvariantError from config validation into a usage error.
template <typename Fn>
void check_usage(Fn&& fn) {
  try {
    fn();
  } catch (const InvariantError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build raw and clustered graph datasets from placed netlists"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with option values (same names as the flags)");
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "quiet or info")
      ->check(CLI::IsMember({"quiet", "info"}))
      ->capture_default_str();

  const auto info = [&](const std::string& msg) {
    if (log_level != "quiet") std::cerr << msg << "\n";
  };

  std::map<CLI::App*, std::function<void()>> handlers;

  // gen
  CorpusSpec gen_spec;
  CoarsenConfig gen_cfg;
  std::string gen_out;
  std::size_t gen_jobs = default_jobs();
  {
    auto* sub = app.add_subcommand("gen", "generate a synthetic corpus and its manifest skeleton");
    sub->add_option("--out", gen_out, "output directory")->required();
    add_spec(sub, gen_spec);
    add_thresholds(sub, gen_cfg);
    sub->add_option("--jobs", gen_jobs, "worker threads")->capture_default_str();
    handlers[sub] = [&] {
      check_usage([&] {
        gen_spec.validate();
        gen_cfg.validate();
      });
      const CorpusIndex index = generate_corpus(gen_spec, gen_cfg, gen_out, gen_jobs);
      const std::size_t rows = index.placements.size() * gen_spec.cts_per_placement;
      std::printf("%zu manifest rows, %zu designs, %zu placements\n", rows, gen_spec.n_designs,
                  index.placements.size());
    };
  }

  // build
  std::string build_netlist, build_activity, build_kind, build_out;
  CoarsenConfig build_cfg;
  int build_hops = 1;
  {
    auto* sub = app.add_subcommand("build", "build one raw or clustered graph archive");
    sub->add_option("--netlist", build_netlist, "placed netlist (.pnl.json)")->required();
    sub->add_option("--activity", build_activity, "activity file (.saif or .csv)")->required();
    sub->add_option("--kind", build_kind, "raw or clustered")
        ->required()
        ->check(CLI::IsMember({"raw", "clustered"}));
    sub->add_option("--out", build_out, "output .ctsg path")->required();
    add_seed(sub, build_cfg.seed);
    add_thresholds(sub, build_cfg);
    sub->add_option("--raw-hops", build_hops, "raw graph logic depth around flip-flops")->capture_default_str();
    handlers[sub] = [&] {
      check_usage([&] {
        build_cfg.validate();
        if (build_hops < 1) throw InvariantError("--raw-hops must be >= 1");
      });
      const PlacedNetlist netlist = read_netlist_file(build_netlist);
      const ActivityMap activity = read_activity_file(build_activity);
      if (build_kind == "raw") {
        const RawGraph g = build_raw_graph(netlist, activity, build_hops);
        write_archive(g, build_out, build_cfg.seed);
        std::printf("raw graph: %zu nodes, %zu edges\n", g.nodes.size(), g.edges.size());
        if (g.missing_activity > 0) info("warning: " + std::to_string(g.missing_activity) + " nodes lack activity");
      } else {
        const ClusteredGraph g = build_clustered_graph(netlist, activity, build_cfg);
        write_archive(g, build_out);
        std::printf("clustered graph: %zu nodes, %zu edges, compression %.4f, unclaimed logic %zu\n",
                    g.nodes.size(), g.edges.size(), g.compression_ratio(), g.unclaimed_logic);
      }
    };
  }

  // gap
  std::string gap_in, gap_out;
  bool gap_hold = false;
  {
    auto* sub = app.add_subcommand("gap", "fill gap-vector and Pareto-distance columns of a manifest");
    sub->add_option("--in", gap_in, "input manifest.csv")->required();
    sub->add_option("--out", gap_out, "output manifest (default: overwrite input)");
    sub->add_flag("--hold-skew", gap_hold, "score skew on the hold axis");
    handlers[sub] = [&] {
      auto rows = read_manifest_file(gap_in);
      fill_gaps(rows, gap_hold ? SkewAxis::Hold : SkewAxis::Setup);
      write_manifest_file(rows, gap_out.empty() ? gap_in : gap_out);
      std::set<std::string> designs;
      for (const auto& r : rows) designs.insert(r.design_name);
      std::printf("%zu rows scored across %zu designs\n", rows.size(), designs.size());
    };
  }

  // bench
  std::string bench_corpus, bench_out;
  BenchConfig bench_cfg;
  {
    auto* sub = app.add_subcommand("bench", "measure compression, footprint and build times of a corpus");
    sub->add_option("--corpus", bench_corpus, "corpus directory")->required();
    sub->add_option("--out", bench_out, "report directory (default: <corpus>/bench)");
    sub->add_option("--repetitions", bench_cfg.repetitions, "timing repetitions (median)")
        ->capture_default_str();
    sub->add_flag("--parallel", bench_cfg.parallel, "run placements concurrently (throughput mode)");
    sub->add_option("--jobs", bench_cfg.jobs, "worker threads in --parallel mode")->capture_default_str();
    add_thresholds(sub, bench_cfg.thresholds);
    handlers[sub] = [&] {
      check_usage([&] {
        bench_cfg.thresholds.validate();
        if (bench_cfg.repetitions < 1) throw InvariantError("--repetitions must be >= 1");
      });
      const EfficiencyReport report = run_benchmark(bench_corpus, bench_cfg);
      const std::string out = bench_out.empty() ? (std::filesystem::path(bench_corpus) / "bench").string() : bench_out;
      write_report(report, out);
      std::fputs(report_table(report).c_str(), stdout);
      std::printf("report written to %s (%s mode)\n", out.c_str(), report.mode().c_str());
    };
  }

  // pipeline
  PipelineConfig pipe;
  std::string stop_after;
  bool pipe_hold = false;
  {
    auto* sub = app.add_subcommand("pipeline", "gen, build, gap, manifest and bench in one run");
    sub->add_option("--out", pipe.out_dir, "output directory")->required();
    add_spec(sub, pipe.spec);
    add_thresholds(sub, pipe.thresholds);
    sub->add_option("--repetitions", pipe.repetitions, "timing repetitions (median)")->capture_default_str();
    sub->add_flag("--parallel-bench", pipe.parallel_bench, "benchmark in throughput mode");
    sub->add_option("--jobs", pipe.jobs, "worker threads")->capture_default_str();
    sub->add_flag("--resume", pipe.resume, "skip stages whose outputs are still current");
    sub->add_option("--stop-after", stop_after, "stop after this stage")
        ->check(CLI::IsMember({"gen", "build", "gap", "manifest", "bench"}));
    sub->add_flag("--hold-skew", pipe_hold, "score skew on the hold axis");
    handlers[sub] = [&] {
      check_usage([&] {
        pipe.spec.validate();
        pipe.thresholds.validate();
        if (pipe.repetitions < 1) throw InvariantError("--repetitions must be >= 1");
      });
      if (!stop_after.empty()) pipe.stop_after = parse_stage(stop_after);
      pipe.skew_axis = pipe_hold ? SkewAxis::Hold : SkewAxis::Setup;
      pipe.log = info;
      const PipelineResult r = run_pipeline(pipe);
      for (const auto& s : r.stages) {
        std::printf("%-9s %s\n", std::string(to_string(s.stage)).c_str(), s.skipped ? "skipped" : "done");
      }
      std::printf("%zu manifest rows\n", r.manifest_rows);
      if (r.report) {
        std::printf("mean node compression %.4f\n", r.report->aggregates().at("node_compression").mean);
      }
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  info("# effective configuration");
  info(app.config_to_str(true, false));

  try {
    for (auto* sub : app.get_subcommands()) handlers.at(sub)();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
