#include "ctsbench/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "ctsbench/activity.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"
#include "ctsbench/netlist.hpp"
#include "ctsbench/parallel.hpp"
#include "ctsbench/raw_graph.hpp"
#include "ctsbench/rng.hpp"

namespace ctsbench {

namespace {

std::string numbered(char prefix, std::size_t i, std::size_t count, int min_width) {
  int width = 1;
  for (std::size_t n = count > 0 ? count - 1 : 0; n >= 10; n /= 10) ++width;
  width = std::max(width, min_width);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, i);
  return buf;
}

nlohmann::json spec_json(const CorpusSpec& s) {
  return {{"n_designs", s.n_designs},
          {"placements_per_design", s.placements_per_design},
          {"cts_per_placement", s.cts_per_placement},
          {"cells_min", s.cells_min},
          {"cells_max", s.cells_max},
          {"ff_fraction_min", s.ff_fraction_min},
          {"ff_fraction_max", s.ff_fraction_max},
          {"seed", s.seed}};
}

}  // namespace

void CorpusSpec::validate() const {
  if (n_designs < 1 || placements_per_design < 1 || cts_per_placement < 1) {
    throw InvariantError("corpus counts must be >= 1");
  }
  if (cells_min < 2 || cells_min > cells_max) throw InvariantError("need 2 <= cells_min <= cells_max");
  if (!(ff_fraction_min > 0.0 && ff_fraction_min <= ff_fraction_max && ff_fraction_max < 1.0)) {
    throw InvariantError("need 0 < ff_fraction_min <= ff_fraction_max < 1");
  }
}

CorpusSpec reference_corpus_spec() {
  CorpusSpec s;
  s.n_designs = 5;
  s.placements_per_design = 4;
  s.cts_per_placement = 10;
  s.cells_min = 400;
  s.cells_max = 1200;
  s.ff_fraction_min = 0.12;
  s.ff_fraction_max = 0.20;
  s.seed = 20250101;
  return s;
}

std::vector<PlacementPlan> plan_corpus(const CorpusSpec& spec) {
  spec.validate();
  std::vector<PlacementPlan> plans;
  plans.reserve(spec.n_designs * spec.placements_per_design);
  for (std::size_t i = 0; i < spec.n_designs; ++i) {
    const std::uint64_t seed_d = derive_seed(spec.seed, i);
    Rng drng(seed_d);
    const std::size_t cells = drng.between(spec.cells_min, spec.cells_max);
    const double ff_fraction = drng.uniform(spec.ff_fraction_min, spec.ff_fraction_max);
    for (std::size_t j = 0; j < spec.placements_per_design; ++j) {
      const std::uint64_t seed_p = derive_seed(seed_d, j);
      Rng prng(seed_p);
      PlacementPlan p;
      p.design_name = numbered('d', i, spec.n_designs, 2);
      p.placement_id = numbered('p', j, spec.placements_per_design, 3);
      p.cells = cells;
      p.ff_fraction = ff_fraction;
      p.knobs = sample_placement_knobs(prng);
      p.netlist_seed = prng.next();
      p.coarsen_seed = prng.next();
      for (std::size_t k = 0; k < spec.cts_per_placement; ++k) {
        Rng crng(derive_seed(seed_p, 1000 + k));
        CtsVariant v;
        v.id = static_cast<int>(k);
        v.knobs = sample_cts_knobs(crng);
        v.qor_seed = crng.next();
        p.variants.push_back(v);
      }
      plans.push_back(std::move(p));
    }
  }
  return plans;
}

GeneratedDesign realize(const PlacementPlan& plan) {
  GeneratorOptions opts;
  opts.design_name = plan.design_name;
  opts.ff_fraction = plan.ff_fraction;
  return generate_netlist(plan.knobs, plan.cells, plan.netlist_seed, opts);
}

CoarsenConfig coarsen_config_for(const PlacementPlan& plan, const CoarsenConfig& thresholds) {
  CoarsenConfig cfg = thresholds;
  cfg.seed = plan.coarsen_seed;
  return cfg;
}

std::vector<ManifestRow> placement_rows(const PlacementPlan& plan, const GeneratedDesign& design,
                                        const RawGraph& raw, const ClusteredGraph& clustered) {
  std::vector<ManifestRow> rows;
  rows.reserve(plan.variants.size());
  for (const auto& v : plan.variants) {
    ManifestRow r;
    r.design_name = plan.design_name;
    r.placement_id = plan.placement_id;
    r.cts_variant_id = v.id;
    r.placement = plan.knobs;
    r.cts = v.knobs;
    r.qor = surrogate_qor(design.netlist, design.activity, raw, clustered, v.knobs, v.qor_seed);
    r.raw_graph_path = plan.raw_graph_path();
    r.clustered_graph_path = plan.clustered_graph_path();
    rows.push_back(std::move(r));
  }
  return rows;
}

CorpusIndex generate_corpus(const CorpusSpec& spec, const CoarsenConfig& thresholds,
                            const std::string& out_dir, std::size_t jobs) {
  thresholds.validate();
  CorpusIndex index{spec, thresholds, plan_corpus(spec)};
  index.thresholds.seed = 0;
  const auto root = std::filesystem::path(out_dir);

  std::vector<std::vector<ManifestRow>> rows(index.placements.size());
  parallel_for(index.placements.size(), jobs, [&](std::size_t i) {
    const PlacementPlan& plan = index.placements[i];
    const GeneratedDesign design = realize(plan);
    const RawGraph raw = build_raw_graph(design.netlist, design.activity);
    const ClusteredGraph clustered =
        build_clustered_graph(design.netlist, design.activity, coarsen_config_for(plan, thresholds));
    rows[i] = placement_rows(plan, design, raw, clustered);
    write_netlist_file(design.netlist, (root / plan.netlist_path()).string());
    write_file((root / plan.activity_path()).string(), write_saif(design.activity));
  });

  nlohmann::json placements = nlohmann::json::array();
  for (const auto& p : index.placements) {
    placements.push_back({{"design_name", p.design_name},
                          {"placement_id", p.placement_id},
                          {"cells", p.cells},
                          {"coarsen_seed", p.coarsen_seed},
                          {"netlist", p.netlist_path()},
                          {"activity", p.activity_path()}});
  }
  const nlohmann::json doc = {
      {"spec", spec_json(spec)},
      {"coarsen",
       {{"spread_threshold", thresholds.spread_threshold},
        {"merge_distance", thresholds.merge_distance},
        {"cos_threshold", thresholds.cos_threshold}}},
      {"placements", placements}};
  write_file((root / "corpus.json").string(), doc.dump(1) + "\n");

  std::vector<ManifestRow> all;
  for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
  sort_manifest(all);
  write_manifest_file(all, (root / "manifest.csv").string());
  return index;
}

CorpusIndex read_corpus_index(const std::string& corpus_dir) {
  const std::string path = (std::filesystem::path(corpus_dir) / "corpus.json").string();
  if (!std::filesystem::is_regular_file(path)) throw MissingArtifactError(path);
  CorpusIndex index;
  try {
    const auto doc = nlohmann::json::parse(read_file(path));
    const auto& s = doc.at("spec");
    index.spec.n_designs = s.at("n_designs").get<std::size_t>();
    index.spec.placements_per_design = s.at("placements_per_design").get<std::size_t>();
    index.spec.cts_per_placement = s.at("cts_per_placement").get<std::size_t>();
    index.spec.cells_min = s.at("cells_min").get<std::size_t>();
    index.spec.cells_max = s.at("cells_max").get<std::size_t>();
    index.spec.ff_fraction_min = s.at("ff_fraction_min").get<double>();
    index.spec.ff_fraction_max = s.at("ff_fraction_max").get<double>();
    index.spec.seed = s.at("seed").get<std::uint64_t>();
    const auto& c = doc.at("coarsen");
    index.thresholds.spread_threshold = c.at("spread_threshold").get<double>();
    index.thresholds.merge_distance = c.at("merge_distance").get<double>();
    index.thresholds.cos_threshold = c.at("cos_threshold").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path, "corpus index document", e.what());
  }
  index.placements = plan_corpus(index.spec);
  return index;
}

}  // namespace ctsbench
