#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctsbench/bench.hpp"
#include "ctsbench/coarsen.hpp"
#include "ctsbench/corpus.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/gap.hpp"
#include "ctsbench/parallel.hpp"

namespace ctsbench {

enum class Stage { Gen, Build, Gap, Manifest, Bench };

inline constexpr std::array<Stage, 5> kStages = {Stage::Gen, Stage::Build, Stage::Gap, Stage::Manifest,
                                                 Stage::Bench};

std::string_view to_string(Stage s);
// Throws InvariantError on an unknown name.
Stage parse_stage(std::string_view name);

// A stage failure; keeps the kind of the underlying error and names the stage.
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& kind, const std::string& what)
      : Error(kind, "stage '" + std::string(to_string(stage)) + "' failed: " + what), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

struct PipelineConfig {
  std::string out_dir;
  CorpusSpec spec;
  CoarsenConfig thresholds;
  SkewAxis skew_axis = SkewAxis::Setup;
  std::size_t repetitions = 5;
  bool parallel_bench = false;
  std::size_t jobs = default_jobs();
  // Skip stages whose recorded input key and output checksums still match.
  bool resume = false;
  std::optional<Stage> stop_after;
  std::function<void(const std::string&)> log;
};

struct StageOutcome {
  Stage stage;
  bool skipped = false;
};

struct PipelineResult {
  std::vector<StageOutcome> stages;
  std::size_t manifest_rows = 0;
  std::optional<EfficiencyReport> report;  // set when the bench stage ran
};

// gen -> build -> gap -> manifest -> bench under `out_dir`:
//   gen       corpus.json, <design>/<placement>/{netlist.pnl.json,activity.saif},
//             skeleton manifest.csv with surrogate QoR
//   build     <design>/<placement>/{raw,clustered}.ctsg
//   gap       gap columns of manifest.csv
//   manifest  sorted, audited manifest.csv
//   bench     bench/ (efficiency data and figures; bench/timing/ holds timings)
// Each completed stage leaves `.stages/<stage>.json` with its input key (config
// fingerprint chained with the previous stage's output checksum) and the
// checksum of its outputs.
PipelineResult run_pipeline(const PipelineConfig& cfg);

// Paths excluded when comparing two pipeline output trees: wall-clock timings.
bool is_nondeterministic_output(const std::string& relative_path);

}  // namespace ctsbench
