#include "ctsbench/pipeline.hpp"

#include <filesystem>

#include <json.hpp>

#include "ctsbench/archive.hpp"
#include "ctsbench/checksum.hpp"
#include "ctsbench/io.hpp"
#include "ctsbench/manifest.hpp"
#include "ctsbench/netlist.hpp"
#include "ctsbench/raw_graph.hpp"

namespace ctsbench {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 5> kStageNames = {"gen", "build", "gap", "manifest", "bench"};

const char* const kBenchOutputs[] = {"bench/efficiency.csv", "bench/efficiency.json",
                                     "bench/compression_scatter.csv", "bench/compression_scatter.svg",
                                     "bench/efficiency_bars.csv", "bench/efficiency_bars.svg"};

std::string fingerprint(const PipelineConfig& cfg) {
  const nlohmann::json doc = {
      {"spec",
       {cfg.spec.n_designs, cfg.spec.placements_per_design, cfg.spec.cts_per_placement, cfg.spec.cells_min,
        cfg.spec.cells_max, cfg.spec.ff_fraction_min, cfg.spec.ff_fraction_max, cfg.spec.seed}},
      {"coarsen", {cfg.thresholds.spread_threshold, cfg.thresholds.merge_distance, cfg.thresholds.cos_threshold}},
      {"hold_skew", cfg.skew_axis == SkewAxis::Hold},
      {"repetitions", cfg.repetitions},
      {"parallel_bench", cfg.parallel_bench}};
  return doc.dump();
}

std::vector<std::string> stage_outputs(Stage s, const std::vector<PlacementPlan>& plans) {
  std::vector<std::string> out;
  switch (s) {
    case Stage::Gen:
      out.push_back("corpus.json");
      for (const auto& p : plans) {
        out.push_back(p.netlist_path());
        out.push_back(p.activity_path());
      }
      break;
    case Stage::Build:
      for (const auto& p : plans) {
        out.push_back(p.raw_graph_path());
        out.push_back(p.clustered_graph_path());
      }
      break;
    case Stage::Gap:
    case Stage::Manifest:
      out.push_back("manifest.csv");
      break;
    case Stage::Bench:
      out.assign(std::begin(kBenchOutputs), std::end(kBenchOutputs));
      break;
  }
  return out;
}

// Checksum over the listed files; nullopt if any is missing.
std::optional<std::string> outputs_checksum(const fs::path& root, const std::vector<std::string>& files) {
  std::string listing;
  for (const auto& f : files) {
    const fs::path p = root / f;
    if (!fs::is_regular_file(p)) return std::nullopt;
    listing += f + "\t" + file_checksum(p.string()) + "\n";
  }
  return sha256_hex(listing);
}

fs::path stamp_path(const fs::path& root, Stage s) {
  return root / ".stages" / (std::string(to_string(s)) + ".json");
}

bool stamp_matches(const fs::path& root, Stage s, const std::string& input_key,
                   const std::optional<std::string>& output_sum) {
  const fs::path p = stamp_path(root, s);
  if (!output_sum || !fs::is_regular_file(p)) return false;
  try {
    const auto doc = nlohmann::json::parse(read_file(p.string()));
    return doc.at("input").get<std::string>() == input_key && doc.at("output").get<std::string>() == *output_sum;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

void build_archives(const fs::path& root, const CorpusIndex& index, const CoarsenConfig& thresholds,
                    std::size_t jobs) {
  parallel_for(index.placements.size(), jobs, [&](std::size_t i) {
    const PlacementPlan& plan = index.placements[i];
    const PlacedNetlist netlist = read_netlist_file((root / plan.netlist_path()).string());
    const ActivityMap activity = read_activity_file((root / plan.activity_path()).string());
    write_archive(build_raw_graph(netlist, activity), (root / plan.raw_graph_path()).string());
    write_archive(build_clustered_graph(netlist, activity, coarsen_config_for(plan, thresholds)),
                  (root / plan.clustered_graph_path()).string());
  });
}

}  // namespace

std::string_view to_string(Stage s) { return kStageNames[static_cast<std::size_t>(s)]; }

Stage parse_stage(std::string_view name) {
  for (Stage s : kStages) {
    if (to_string(s) == name) return s;
  }
  throw InvariantError("unknown stage '" + std::string(name) + "'");
}

bool is_nondeterministic_output(const std::string& relative_path) {
  return relative_path.rfind("bench/timing/", 0) == 0;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.spec.validate();
  cfg.thresholds.validate();
  if (cfg.repetitions < 1) throw InvariantError("repetitions must be >= 1");
  if (cfg.out_dir.empty()) throw InvariantError("output directory is required");

  const fs::path root(cfg.out_dir);
  const auto log = [&](const std::string& msg) {
    if (cfg.log) cfg.log(msg);
  };
  const std::vector<PlacementPlan> plans = plan_corpus(cfg.spec);
  const std::string config_key = fingerprint(cfg);

  PipelineResult result;
  std::string previous_output;
  for (Stage stage : kStages) {
    const std::string input_key = sha256_hex(config_key + "\n" + previous_output);
    const std::vector<std::string> outputs = stage_outputs(stage, plans);

    bool skip = false;
    if (cfg.resume) {
      const auto sum = outputs_checksum(root, outputs);
      skip = (stage != Stage::Gen || fs::is_regular_file(root / "manifest.csv")) &&
             stamp_matches(root, stage, input_key, sum);
    }

    if (skip) {
      log("stage " + std::string(to_string(stage)) + ": up to date, skipped");
    } else {
      log("stage " + std::string(to_string(stage)) + ": running");
      try {
        switch (stage) {
          case Stage::Gen:
            generate_corpus(cfg.spec, cfg.thresholds, cfg.out_dir, cfg.jobs);
            break;
          case Stage::Build:
            build_archives(root, read_corpus_index(cfg.out_dir), cfg.thresholds, cfg.jobs);
            break;
          case Stage::Gap: {
            auto rows = read_manifest_file((root / "manifest.csv").string());
            fill_gaps(rows, cfg.skew_axis);
            write_manifest_file(rows, (root / "manifest.csv").string());
            break;
          }
          case Stage::Manifest: {
            auto rows = assemble_manifest(cfg.out_dir, read_manifest_file((root / "manifest.csv").string()),
                                          cfg.skew_axis);
            result.manifest_rows = rows.size();
            break;
          }
          case Stage::Bench: {
            BenchConfig bc;
            bc.thresholds = cfg.thresholds;
            bc.repetitions = cfg.repetitions;
            bc.parallel = cfg.parallel_bench;
            bc.jobs = cfg.jobs;
            result.report = run_benchmark(cfg.out_dir, bc);
            write_report(*result.report, (root / "bench").string());
            break;
          }
        }
      } catch (const Error& e) {
        throw StageError(stage, e.kind(), e.what());
      } catch (const std::exception& e) {
        throw StageError(stage, "Error", e.what());
      }
    }

    const auto sum = outputs_checksum(root, outputs);
    if (!sum) throw StageError(stage, "MissingArtifactError", "stage outputs incomplete");
    if (!skip) {
      const nlohmann::json stamp = {{"stage", to_string(stage)}, {"input", input_key}, {"output", *sum}};
      write_file(stamp_path(root, stage).string(), stamp.dump(1) + "\n");
    }
    previous_output = *sum;
    result.stages.push_back({stage, skip});
    if (cfg.stop_after && *cfg.stop_after == stage) break;
  }
  if (result.manifest_rows == 0 && fs::is_regular_file(root / "manifest.csv")) {
    result.manifest_rows = read_manifest_file((root / "manifest.csv").string()).size();
  }
  return result;
}

}  // namespace ctsbench
