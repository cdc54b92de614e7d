#include <gtest/gtest.h>

#include <filesystem>

#include "ctsbench/checksum.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"
#include "ctsbench/manifest.hpp"
#include "ctsbench/pipeline.hpp"
#include "support.hpp"

using namespace ctsbench;

namespace {

PipelineConfig small(const std::string& out) {
  PipelineConfig cfg;
  cfg.out_dir = out;
  cfg.spec.n_designs = 2;
  cfg.spec.placements_per_design = 2;
  cfg.spec.cts_per_placement = 3;
  cfg.spec.cells_min = 100;
  cfg.spec.cells_max = 200;
  cfg.spec.seed = 99;
  cfg.repetitions = 1;
  cfg.jobs = 2;
  return cfg;
}

std::vector<bool> skipped(const PipelineResult& r) {
  std::vector<bool> out;
  for (const auto& s : r.stages) out.push_back(s.skipped);
  return out;
}

}  // namespace

TEST(Pipeline, StageNames) {
  for (Stage s : kStages) EXPECT_EQ(parse_stage(to_string(s)), s);
  EXPECT_EQ(to_string(Stage::Manifest), "manifest");
  EXPECT_THROW(parse_stage("train"), InvariantError);
  EXPECT_TRUE(is_nondeterministic_output("bench/timing/timings.csv"));
  EXPECT_FALSE(is_nondeterministic_output("bench/efficiency.csv"));
  EXPECT_FALSE(is_nondeterministic_output("d0/p0/raw.ctsg"));
}

TEST(Pipeline, EndToEnd) {
  testutil::TempDir dir;
  std::vector<std::string> logged;
  PipelineConfig cfg = small(dir.str());
  cfg.log = [&](const std::string& m) { logged.push_back(m); };
  const PipelineResult r = run_pipeline(cfg);
  ASSERT_EQ(r.stages.size(), 5u);
  EXPECT_EQ(skipped(r), std::vector<bool>(5, false));
  EXPECT_EQ(r.manifest_rows, 12u);
  ASSERT_TRUE(r.report.has_value());
  EXPECT_EQ(r.report->rows.size(), 4u);
  EXPECT_FALSE(logged.empty());

  const auto rows = read_manifest_file(dir / "manifest.csv");
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_NO_THROW(audit_manifest(dir.str(), rows));
  for (const auto& row : rows) EXPECT_TRUE(row.score.has_value());
  for (Stage s : kStages) {
    EXPECT_TRUE(std::filesystem::is_regular_file(dir / (".stages/" + std::string(to_string(s)) + ".json")));
  }
  EXPECT_TRUE(std::filesystem::is_regular_file(dir / "bench/efficiency.csv"));
  EXPECT_TRUE(std::filesystem::is_regular_file(dir / "bench/timing/timings.csv"));
}

TEST(Pipeline, SameSeedSameTree) {
  testutil::TempDir a, b;
  run_pipeline(small(a.str()));
  PipelineConfig cfg = small(b.str());
  cfg.jobs = 1;  // worker count must not matter
  run_pipeline(cfg);
  const auto ta = tree_checksums(a.str(), is_nondeterministic_output);
  const auto tb = tree_checksums(b.str(), is_nondeterministic_output);
  EXPECT_EQ(ta, tb);
  EXPECT_TRUE(ta.count("d01/p001/clustered.ctsg"));
  EXPECT_TRUE(ta.count("manifest.csv"));
  EXPECT_TRUE(ta.count("bench/efficiency.json"));
}

TEST(Pipeline, DifferentSeedDifferentTree) {
  testutil::TempDir a, b;
  run_pipeline(small(a.str()));
  PipelineConfig cfg = small(b.str());
  cfg.spec.seed = 100;
  run_pipeline(cfg);
  EXPECT_NE(tree_checksum(a.str(), is_nondeterministic_output), tree_checksum(b.str(), is_nondeterministic_output));
}

TEST(Pipeline, ResumeAfterInterruption) {
  testutil::TempDir dir;
  PipelineConfig cfg = small(dir.str());
  cfg.stop_after = Stage::Build;
  const auto first = run_pipeline(cfg);
  EXPECT_EQ(first.stages.size(), 2u);
  EXPECT_FALSE(std::filesystem::exists(dir / "bench"));

  const auto netlist = dir / "d00/p000/netlist.pnl.json";
  const auto before = std::filesystem::last_write_time(netlist);
  const std::string before_sum = tree_checksum(dir.str());

  cfg.stop_after.reset();
  cfg.resume = true;
  const auto second = run_pipeline(cfg);
  EXPECT_EQ(skipped(second), (std::vector<bool>{true, true, false, false, false}));
  EXPECT_EQ(std::filesystem::last_write_time(netlist), before);
  EXPECT_NE(tree_checksum(dir.str()), before_sum);

  // Resuming a finished run redoes nothing, and the tree matches a fresh run.
  const auto third = run_pipeline(cfg);
  EXPECT_EQ(skipped(third), std::vector<bool>(5, true));
  testutil::TempDir fresh;
  run_pipeline(small(fresh.str()));
  EXPECT_EQ(tree_checksums(dir.str(), is_nondeterministic_output),
            tree_checksums(fresh.str(), is_nondeterministic_output));
}

TEST(Pipeline, ResumeRebuildsTamperedOutputs) {
  testutil::TempDir dir;
  PipelineConfig cfg = small(dir.str());
  run_pipeline(cfg);
  const auto golden = tree_checksums(dir.str(), is_nondeterministic_output);

  std::string victim;
  for (const auto& [rel, sum] : golden) {
    if (rel.size() > 14 && rel.substr(rel.size() - 14) == "clustered.ctsg") {
      victim = dir / rel;
      break;
    }
  }
  ASSERT_FALSE(victim.empty());
  write_file(victim, "junk");
  cfg.resume = true;
  const auto r = run_pipeline(cfg);
  EXPECT_EQ(skipped(r), (std::vector<bool>{true, false, true, true, true}));
  EXPECT_EQ(tree_checksums(dir.str(), is_nondeterministic_output), golden);
}

TEST(Pipeline, ConfigChangeInvalidatesResume) {
  testutil::TempDir dir;
  PipelineConfig cfg = small(dir.str());
  run_pipeline(cfg);
  cfg.resume = true;
  cfg.thresholds.merge_distance = 0.04;
  const auto r = run_pipeline(cfg);
  for (const auto& s : r.stages) EXPECT_FALSE(s.skipped) << to_string(s.stage);
}

TEST(Pipeline, FailingStageIsNamed) {
  testutil::TempDir dir;
  write_file(dir / "blocker", "not a directory");
  try {
    run_pipeline(small(dir / "blocker"));
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), Stage::Gen);
    EXPECT_NE(std::string(e.what()).find("stage 'gen'"), std::string::npos);
  }

  // An unwritable archive path fails the build stage with the I/O error kind.
  PipelineConfig cfg = small(dir / "out");
  cfg.stop_after = Stage::Gen;
  run_pipeline(cfg);
  std::filesystem::create_directories(dir / "out/d00/p001/raw.ctsg/x");
  cfg.stop_after.reset();
  try {
    run_pipeline(cfg);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), Stage::Build);
    EXPECT_EQ(e.kind(), "IoError");
  }
}

TEST(Pipeline, RejectsBadConfig) {
  testutil::TempDir dir;
  PipelineConfig cfg = small(dir.str());
  cfg.thresholds.cos_threshold = 1.1;
  EXPECT_THROW(run_pipeline(cfg), InvariantError);
  cfg = small(dir.str());
  cfg.repetitions = 0;
  EXPECT_THROW(run_pipeline(cfg), InvariantError);
}
