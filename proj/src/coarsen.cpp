#include "ctsbench/coarsen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "ctsbench/errors.hpp"
#include "ctsbench/rng.hpp"

namespace ctsbench {

void CoarsenConfig::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(spread_threshold)) throw InvariantError("spread_threshold must be > 0");
  if (!positive(merge_distance)) throw InvariantError("merge_distance must be > 0");
  if (!std::isfinite(cos_threshold) || !(cos_threshold > -1.0 && cos_threshold <= 1.0)) {
    throw InvariantError("cos_threshold must lie in (-1, 1]");
  }
}

namespace {

UnitPoint mean_of(std::span<const UnitPoint> points) {
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(points.size());
  return {sx / n, sy / n};
}

std::vector<UnitPoint> points_of(const NetlistIndex& index, const std::vector<std::size_t>& cells) {
  std::vector<UnitPoint> pts;
  pts.reserve(cells.size());
  for (std::size_t c : cells) pts.push_back(index.position(c));
  return pts;
}

std::vector<std::size_t> indices_of(const NetlistIndex& index, const std::vector<std::string>& ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(index.index_of(id));
  return out;
}

std::vector<std::string> sorted_ids(const NetlistIndex& index, const std::vector<std::size_t>& cells) {
  std::vector<std::string> ids;
  ids.reserve(cells.size());
  for (std::size_t c : cells) ids.push_back(index.cell(c).id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::array<double, kMacroFeatureDim> features_of(const NetlistIndex& index,
                                                 const std::vector<std::size_t>& cells,
                                                 const ActivityMap& activity) {
  const std::vector<UnitPoint> pts = points_of(index, cells);
  const UnitPoint c = mean_of(pts);
  const Spread s = spread(pts);
  double n_ff = 0.0;
  std::uint64_t max_tc = 0;
  double sum_tc = 0.0;
  double nonzero = 0.0;
  for (std::size_t ci : cells) {
    const PlacedCell& cell = index.cell(ci);
    if (cell.is_ff()) n_ff += 1.0;
    const std::uint64_t tc = activity.lookup(cell.id).value_or(0);
    max_tc = std::max(max_tc, tc);
    sum_tc += static_cast<double>(tc);
    if (tc > 0) nonzero += 1.0;
  }
  const double size = static_cast<double>(cells.size());
  return {c.x,
          c.y,
          s.sx,
          s.sy,
          std::log1p(size),
          n_ff,
          size - n_ff,
          std::log1p(static_cast<double>(max_tc)),
          std::log1p(sum_tc),
          nonzero};
}

std::vector<MacroNode> merge_indexed(const AtomicClustering& atomics, const CoarsenConfig& cfg,
                                     const NetlistIndex& index, const ActivityMap& activity,
                                     std::vector<MergeEvent>* trace) {
  cfg.validate();

  struct Open {
    std::vector<std::size_t> cells;
    double sum_x = 0.0;
    double sum_y = 0.0;
    GravityVector seed_gravity;
    UnitPoint centroid() const {
      const double n = static_cast<double>(cells.size());
      return {sum_x / n, sum_y / n};
    }
  };

  std::vector<MacroNode> macros;
  std::vector<Open> state;
  // Open (mergeable) macros per control-net domain, in creation order.
  std::map<std::optional<std::string>, std::vector<std::size_t>> open_by_domain;

  for (std::size_t a = 0; a < atomics.clusters.size(); ++a) {
    const AtomicCluster& atomic = atomics.clusters[a];
    const std::vector<std::size_t> cells = indices_of(index, atomic.members);
    const bool bypass = atomic.spread.max() > cfg.spread_threshold;

    std::optional<std::size_t> target;
    double target_distance = 0.0;
    double target_cosine = 0.0;
    if (!bypass) {
      for (std::size_t m : open_by_domain[atomic.control_net]) {
        const double d = manhattan(atomic.centroid, state[m].centroid());
        if (!(d < cfg.merge_distance)) continue;
        const double cs = cosine_similarity(atomic.gravity, state[m].seed_gravity);
        if (!(cs > cfg.cos_threshold)) continue;
        target = m;
        target_distance = d;
        target_cosine = cs;
        break;
      }
    }

    if (target) {
      Open& o = state[*target];
      for (std::size_t c : cells) {
        o.cells.push_back(c);
        o.sum_x += index.position(c).x;
        o.sum_y += index.position(c).y;
      }
      macros[*target].atomics.push_back(a);
      if (trace) trace->push_back({a, *target, target_distance, target_cosine});
      continue;
    }

    Open o;
    o.cells = cells;
    for (std::size_t c : cells) {
      o.sum_x += index.position(c).x;
      o.sum_y += index.position(c).y;
    }
    o.seed_gravity = atomic.gravity;
    MacroNode node;
    node.atomics.push_back(a);
    node.bypassed = bypass;
    const std::size_t id = macros.size();
    macros.push_back(std::move(node));
    state.push_back(std::move(o));
    if (!bypass) open_by_domain[atomic.control_net].push_back(id);
  }

  for (std::size_t m = 0; m < macros.size(); ++m) {
    macros[m].features = features_of(index, state[m].cells, activity);
    macros[m].cells = sorted_ids(index, state[m].cells);
  }
  return macros;
}

}  // namespace

std::vector<std::size_t> flip_flop_order(const NetlistIndex& index, std::uint64_t seed) {
  std::vector<std::size_t> ffs;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index.cell(i).is_ff()) ffs.push_back(i);
  }
  std::sort(ffs.begin(), ffs.end(),
            [&](std::size_t a, std::size_t b) { return index.cell(a).id < index.cell(b).id; });
  Rng rng(seed);
  shuffle(ffs, rng);
  return ffs;
}

AtomicClustering form_atomic_clusters(const NetlistIndex& index, std::uint64_t seed) {
  const std::vector<std::size_t> order = flip_flop_order(index, seed);
  std::vector<bool> claimed(index.size(), false);
  for (std::size_t ff : order) claimed[ff] = true;

  AtomicClustering out;
  out.clusters.reserve(order.size());
  for (std::size_t ff : order) {
    std::vector<std::size_t> members{ff};
    // BFS over driver->sink fan-out; stops at flip-flops and claimed gates.
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::size_t v : index.fanout(members[head])) {
        if (claimed[v] || index.cell(v).is_ff()) continue;
        claimed[v] = true;
        members.push_back(v);
      }
    }
    const std::vector<UnitPoint> pts = points_of(index, members);
    AtomicCluster c;
    c.owner_ff = index.cell(ff).id;
    c.members = sorted_ids(index, members);
    c.centroid = mean_of(pts);
    c.spread = spread(pts);
    c.gravity = gravity_vector(index, ff);
    c.control_net = index.cell(ff).control_net;
    out.clusters.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (!claimed[i]) ++out.unclaimed_logic;
  }
  return out;
}

AtomicClustering form_atomic_clusters(const PlacedNetlist& netlist, std::uint64_t seed) {
  const NetlistIndex index(netlist);
  return form_atomic_clusters(index, seed);
}

Spread spread(std::span<const UnitPoint> points) {
  if (points.empty()) return {};
  const UnitPoint m = mean_of(points);
  double vx = 0.0, vy = 0.0;
  for (const auto& p : points) {
    vx += (p.x - m.x) * (p.x - m.x);
    vy += (p.y - m.y) * (p.y - m.y);
  }
  const double n = static_cast<double>(points.size());
  return {std::sqrt(vx / n), std::sqrt(vy / n)};
}

Spread spread(const std::vector<std::string>& members, const PlacedNetlist& netlist) {
  const NetlistIndex index(netlist);
  const std::vector<UnitPoint> pts = points_of(index, indices_of(index, members));
  return spread(pts);
}

GravityVector gravity_vector(const NetlistIndex& index, std::size_t ff) {
  const auto& nbrs = index.neighbors(ff);
  if (nbrs.empty()) return {};
  const UnitPoint c = mean_of(points_of(index, nbrs));
  const UnitPoint& p = index.position(ff);
  return {c.x - p.x, c.y - p.y};
}

GravityVector gravity_vector(const std::string& ff, const PlacedNetlist& netlist) {
  const NetlistIndex index(netlist);
  const std::size_t i = index.index_of(ff);
  if (!index.cell(i).is_ff()) throw InvariantError("'" + ff + "' is not a flip-flop");
  return gravity_vector(index, i);
}

double cosine_similarity(const GravityVector& a, const GravityVector& b) {
  if (a.is_zero() || b.is_zero()) return 0.0;
  const double na = std::hypot(a.dx, a.dy);
  const double nb = std::hypot(b.dx, b.dy);
  const double c = (a.dx * b.dx + a.dy * b.dy) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

std::vector<MacroNode> merge_clusters(const AtomicClustering& atomics, const CoarsenConfig& cfg,
                                      const PlacedNetlist& netlist, const ActivityMap& activity,
                                      std::vector<MergeEvent>* trace) {
  const NetlistIndex index(netlist);
  return merge_indexed(atomics, cfg, index, activity, trace);
}

std::array<double, kMacroFeatureDim> macro_features(const std::vector<std::string>& cells,
                                                    const PlacedNetlist& netlist,
                                                    const ActivityMap& activity) {
  const NetlistIndex index(netlist);
  return features_of(index, indices_of(index, cells), activity);
}

ClusteredGraph build_clustered_graph(const PlacedNetlist& netlist, const ActivityMap& activity,
                                     const CoarsenConfig& cfg, std::vector<MergeEvent>* trace) {
  cfg.validate();
  const NetlistIndex index(netlist);
  const AtomicClustering atomics = form_atomic_clusters(index, cfg.seed);
  if (atomics.clusters.empty()) {
    throw EmptyGraphError("clustered graph of '" + netlist.design_name + "' is empty");
  }

  ClusteredGraph g;
  g.design_name = netlist.design_name;
  g.config = cfg;
  g.nodes = merge_indexed(atomics, cfg, index, activity, trace);
  g.atomic_count = atomics.clusters.size();
  g.unclaimed_logic = atomics.unclaimed_logic;
  g.raw_node_count = raw_node_set(index, 1).size();

  std::vector<std::size_t> macro_of(index.size(), SIZE_MAX);
  for (std::size_t m = 0; m < g.nodes.size(); ++m) {
    for (const auto& id : g.nodes[m].cells) {
      macro_of[index.index_of(id)] = m;
      g.assignment.emplace(id, m);
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [a, b] : index.pin_pairs()) {
    const std::size_t ma = macro_of[a];
    const std::size_t mb = macro_of[b];
    if (ma == SIZE_MAX || mb == SIZE_MAX || ma == mb) continue;
    pairs.emplace(std::min(ma, mb), std::max(ma, mb));
  }
  g.edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    g.edges.push_back({a, b, manhattan(g.nodes[a].centroid(), g.nodes[b].centroid())});
  }
  return g;
}

}  // namespace ctsbench
