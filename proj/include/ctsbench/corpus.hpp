#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ctsbench/coarsen.hpp"
#include "ctsbench/knobs.hpp"
#include "ctsbench/manifest.hpp"
#include "ctsbench/synth.hpp"

namespace ctsbench {

struct CorpusSpec {
  std::size_t n_designs = 5;
  std::size_t placements_per_design = 4;
  std::size_t cts_per_placement = 10;
  std::size_t cells_min = 400;
  std::size_t cells_max = 1200;
  double ff_fraction_min = 0.12;
  double ff_fraction_max = 0.20;
  std::uint64_t seed = 1;

  // Throws InvariantError: counts >= 1, cells_min in [2, cells_max],
  // 0 < ff_fraction_min <= ff_fraction_max < 1.
  void validate() const;
  bool operator==(const CorpusSpec&) const = default;
};

// Pinned corpus on which the compression regime is measured.
CorpusSpec reference_corpus_spec();

struct CtsVariant {
  int id = 0;
  CtsKnobs knobs;
  std::uint64_t qor_seed = 0;
};

// Everything needed to regenerate one placement, derived from the root seed:
//   design i     seed_d = derive_seed(spec.seed, i); Rng(seed_d) draws cells, ff_fraction
//   placement j  seed_p = derive_seed(seed_d, j);    Rng(seed_p) draws knobs, netlist seed, coarsen seed
//   variant k    Rng(derive_seed(seed_p, 1000 + k)) draws CTS knobs, QoR seed
struct PlacementPlan {
  std::string design_name;
  std::string placement_id;
  std::size_t cells = 0;
  double ff_fraction = 0.0;
  PlacementKnobs knobs;
  std::uint64_t netlist_seed = 0;
  std::uint64_t coarsen_seed = 0;
  std::vector<CtsVariant> variants;

  std::string dir() const { return design_name + "/" + placement_id; }
  std::string netlist_path() const { return dir() + "/netlist.pnl.json"; }
  std::string activity_path() const { return dir() + "/activity.saif"; }
  std::string raw_graph_path() const { return dir() + "/raw.ctsg"; }
  std::string clustered_graph_path() const { return dir() + "/clustered.ctsg"; }
};

// Design-major, placement-minor order.
std::vector<PlacementPlan> plan_corpus(const CorpusSpec& spec);

GeneratedDesign realize(const PlacementPlan& plan);

// Coarsening thresholds from `thresholds` with the plan's own seed.
CoarsenConfig coarsen_config_for(const PlacementPlan& plan, const CoarsenConfig& thresholds);

// Skeleton manifest rows (QoR filled, gap columns empty) for one placement.
std::vector<ManifestRow> placement_rows(const PlacementPlan& plan, const GeneratedDesign& design,
                                        const RawGraph& raw, const ClusteredGraph& clustered);

struct CorpusIndex {
  CorpusSpec spec;
  CoarsenConfig thresholds;  // seed unused; each placement has its own
  std::vector<PlacementPlan> placements;
};

// Writes `<out>/<design>/<placement>/netlist.pnl.json`, `activity.saif`,
// `<out>/corpus.json` and the skeleton `<out>/manifest.csv`. Placements are
// generated on up to `jobs` threads; output bytes do not depend on `jobs`.
CorpusIndex generate_corpus(const CorpusSpec& spec, const CoarsenConfig& thresholds,
                            const std::string& out_dir, std::size_t jobs = 1);

// Reads `<corpus_dir>/corpus.json`; re-derives the plans from the stored spec.
CorpusIndex read_corpus_index(const std::string& corpus_dir);

}  // namespace ctsbench
