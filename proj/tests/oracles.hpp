#pragma once

// Brute-force reference computations used to check the graph builders.
// They work from the cell/net lists directly and share no code with the
// library's indexed implementations.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ctsbench/coarsen.hpp"
#include "ctsbench/netlist.hpp"

namespace ctsbench::testutil {

inline const PlacedCell& find_cell(const PlacedNetlist& n, const std::string& id) {
  for (const auto& c : n.cells) {
    if (c.id == id) return c;
  }
  throw std::out_of_range(id);
}

inline double unit_manhattan(const PlacedNetlist& n, const PlacedCell& a, const PlacedCell& b) {
  return std::abs(a.x / n.die_width - b.x / n.die_width) + std::abs(a.y / n.die_height - b.y / n.die_height);
}

// Cells within `hops` driver->sink steps of a flip-flop, never stepping into
// or through another flip-flop; flip-flops themselves always included.
inline std::set<std::string> oracle_raw_nodes(const PlacedNetlist& n, int hops) {
  std::set<std::string> out;
  std::set<std::string> frontier;
  for (const auto& c : n.cells) {
    if (c.is_ff()) {
      out.insert(c.id);
      frontier.insert(c.id);
    }
  }
  for (int h = 0; h < hops; ++h) {
    std::set<std::string> next;
    for (const auto& net : n.nets) {
      if (!frontier.count(net.driver)) continue;
      for (const auto& s : net.sinks) {
        if (find_cell(n, s).is_ff() || out.count(s)) continue;
        next.insert(s);
      }
    }
    out.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// (lower id, higher id) -> weight for every driver-sink pair inside `nodes`.
inline std::map<std::pair<std::string, std::string>, double> oracle_raw_edges(const PlacedNetlist& n,
                                                                            const std::set<std::string>& nodes) {
  std::map<std::pair<std::string, std::string>, double> out;
  for (const auto& net : n.nets) {
    for (const auto& s : net.sinks) {
      if (!nodes.count(net.driver) || !nodes.count(s)) continue;
      const auto key = std::minmax(net.driver, s);
      out[{key.first, key.second}] = unit_manhattan(n, find_cell(n, net.driver), find_cell(n, s));
    }
  }
  return out;
}

// Macro pairs connected by at least one driver-sink pin pair, from the
// cell -> macro assignment alone.
inline std::set<std::pair<std::size_t, std::size_t>> oracle_clustered_edges(
    const PlacedNetlist& n, const std::map<std::string, std::size_t>& assignment) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const auto& net : n.nets) {
    const auto d = assignment.find(net.driver);
    if (d == assignment.end()) continue;
    for (const auto& s : net.sinks) {
      const auto t = assignment.find(s);
      if (t == assignment.end() || t->second == d->second) continue;
      out.emplace(std::min(d->second, t->second), std::max(d->second, t->second));
    }
  }
  return out;
}

// Replays the greedy merge from the macro trace and reports the first
// violated rule, or an empty string when every decision checks out.
inline std::string audit_merges(const PlacedNetlist& n, const AtomicClustering& atomics,
                                const std::vector<MacroNode>& macros, const std::vector<MergeEvent>& trace,
                                const CoarsenConfig& cfg) {
  // Running member list per macro, rebuilt in clustering order.
  std::vector<std::vector<std::string>> members(macros.size());
  std::vector<std::size_t> seed_atomic(macros.size(), SIZE_MAX);
  std::map<std::size_t, const MergeEvent*> event_of;
  for (const auto& e : trace) event_of[e.atomic] = &e;

  std::vector<std::size_t> macro_of(atomics.clusters.size(), SIZE_MAX);
  for (std::size_t m = 0; m < macros.size(); ++m) {
    for (std::size_t a : macros[m].atomics) macro_of[a] = m;
  }
  const auto centroid = [&](const std::vector<std::string>& ids) {
    double sx = 0, sy = 0;
    for (const auto& id : ids) {
      const auto& c = find_cell(n, id);
      sx += c.x / n.die_width;
      sy += c.y / n.die_height;
    }
    return UnitPoint{sx / ids.size(), sy / ids.size()};
  };

  const auto eligible = [&](std::size_t e, const AtomicCluster& at) {
    if (seed_atomic[e] == SIZE_MAX || macros[e].bypassed) return false;
    const AtomicCluster& es = atomics.clusters[seed_atomic[e]];
    if (es.control_net != at.control_net) return false;
    const UnitPoint ec = centroid(members[e]);
    const double ed = std::abs(ec.x - at.centroid.x) + std::abs(ec.y - at.centroid.y);
    return ed < cfg.merge_distance && cosine_similarity(at.gravity, es.gravity) > cfg.cos_threshold;
  };

  for (std::size_t a = 0; a < atomics.clusters.size(); ++a) {
    const AtomicCluster& at = atomics.clusters[a];
    const std::size_t m = macro_of[a];
    if (m == SIZE_MAX) return "atomic " + std::to_string(a) + " is in no macro";
    const bool above = at.spread.max() > cfg.spread_threshold;
    if (seed_atomic[m] == SIZE_MAX) {
      if (event_of.count(a)) return "seed atomic " + std::to_string(a) + " has a merge event";
      if (above != macros[m].bypassed) return "bypass flag disagrees with spread of atomic " + std::to_string(a);
      if (!above) {
        for (std::size_t e = 0; e < m; ++e) {
          if (eligible(e, at)) return "atomic " + std::to_string(a) + " opened a macro despite an eligible one";
        }
      }
      seed_atomic[m] = a;
    } else {
      const auto it = event_of.find(a);
      if (it == event_of.end()) return "merged atomic " + std::to_string(a) + " has no merge event";
      if (above) return "atomic above spread threshold was merged";
      const AtomicCluster& seed = atomics.clusters[seed_atomic[m]];
      if (macros[m].bypassed) return "bypassed macro accepted a merge";
      if (seed.control_net != at.control_net) return "control nets differ within a macro";
      const UnitPoint c = centroid(members[m]);
      const double d = std::abs(c.x - at.centroid.x) + std::abs(c.y - at.centroid.y);
      const double cs = cosine_similarity(at.gravity, seed.gravity);
      if (!(d < cfg.merge_distance)) return "merge distance " + std::to_string(d) + " not below threshold";
      if (!(cs > cfg.cos_threshold)) return "merge cosine " + std::to_string(cs) + " not above threshold";
      if (std::abs(d - it->second->distance) > 1e-12 || std::abs(cs - it->second->cosine) > 1e-12) {
        return "trace values differ from replay";
      }
      for (std::size_t e = 0; e < m; ++e) {
        if (eligible(e, at)) return "atomic " + std::to_string(a) + " skipped an earlier eligible macro";
      }
    }
    members[m].insert(members[m].end(), at.members.begin(), at.members.end());
  }
  return "";
}

}  // namespace ctsbench::testutil
