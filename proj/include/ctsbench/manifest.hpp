#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctsbench/gap.hpp"
#include "ctsbench/knobs.hpp"

namespace ctsbench {

struct GapScore {
  GapVector gap;
  double distance = 0.0;
  bool operator==(const GapScore&) const = default;
};

// One (placement, CTS variant) run. Graph paths are relative to the corpus root.
struct ManifestRow {
  std::string design_name;
  std::string placement_id;
  int cts_variant_id = 0;
  PlacementKnobs placement;
  CtsKnobs cts;
  QorRecord qor;
  std::optional<GapScore> score;  // empty in a freshly generated skeleton
  std::string raw_graph_path;
  std::string clustered_graph_path;

  // "<placement_id>/<cts_variant_id>", zero-padded so it sorts numerically.
  std::string run_id() const;
  bool operator==(const ManifestRow&) const = default;
};

// Fixed column order:
//   design_name, placement_id, cts_variant_id,
//   synth_strategy, aspect_ratio, io_mode, core_utilization, target_density,
//   time_driven, routability_driven,
//   sink_max_dia, max_wire_length, cluster_size, buffer_distance,
//   <15 QoR columns in kQorFieldNames order>,
//   g_skew, g_power, g_wl, pareto_distance,
//   raw_graph_path, clustered_graph_path
const std::vector<std::string>& manifest_columns();

std::string write_manifest(const std::vector<ManifestRow>& rows);
// Throws SyntaxError (location = line) on a wrong header, column count or value.
std::vector<ManifestRow> parse_manifest(std::string_view text);

std::vector<ManifestRow> read_manifest_file(const std::string& path);
void write_manifest_file(const std::vector<ManifestRow>& rows, const std::string& path);

// Sorted by (design_name, placement_id, cts_variant_id).
void sort_manifest(std::vector<ManifestRow>& rows);

// Groups rows by design and fills every row's gap score against its group.
// Propagates NonPositiveMinError naming the design.
void fill_gaps(std::vector<ManifestRow>& rows, SkewAxis axis = SkewAxis::Setup);

inline constexpr double kGapTolerance = 1e-9;

// Every referenced archive opens and validates with the expected graph kind
// (MissingArtifactError / FormatError), and every gap column equals its
// recomputation from the QoR columns within kGapTolerance (InconsistentGapError).
void audit_manifest(const std::string& corpus_dir, const std::vector<ManifestRow>& rows,
                    SkewAxis axis = SkewAxis::Setup);

// Sorts, audits and writes `<corpus_dir>/manifest.csv`; returns the sorted rows.
std::vector<ManifestRow> assemble_manifest(const std::string& corpus_dir, std::vector<ManifestRow> rows,
                                           SkewAxis axis = SkewAxis::Setup);

}  // namespace ctsbench
