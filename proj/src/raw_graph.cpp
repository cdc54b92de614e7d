#include "ctsbench/raw_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <tuple>

#include "ctsbench/errors.hpp"

namespace ctsbench {

double manhattan(const UnitPoint& a, const UnitPoint& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

std::vector<std::size_t> raw_node_set(const NetlistIndex& index, int hops) {
  if (hops < 1) throw InvariantError("raw graph hop count must be >= 1");
  const std::size_t n = index.size();
  std::vector<int> depth(n, -1);
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    if (index.cell(i).is_ff()) {
      depth[i] = 0;
      frontier.push_back(i);
    }
  }
  for (int level = 1; level <= hops && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t u : frontier) {
      for (std::size_t v : index.fanout(u)) {
        if (depth[v] >= 0 || index.cell(v).is_ff()) continue;
        depth[v] = level;
        next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    if (depth[i] >= 0) nodes.push_back(i);
  }
  return nodes;
}

RawGraph build_raw_graph(const PlacedNetlist& netlist, const ActivityMap& activity, int hops) {
  const NetlistIndex index(netlist);
  std::vector<std::size_t> members = raw_node_set(index, hops);
  if (members.empty()) throw EmptyGraphError("raw graph of '" + netlist.design_name + "' is empty");

  std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
    return index.cell(a).id < index.cell(b).id;
  });

  RawGraph g;
  g.design_name = netlist.design_name;
  g.hops = hops;
  std::vector<std::size_t> node_of(index.size(), SIZE_MAX);
  g.nodes.reserve(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    const std::size_t ci = members[k];
    const PlacedCell& cell = index.cell(ci);
    const UnitPoint& p = index.position(ci);
    if (!activity.contains(cell.id)) ++g.missing_activity;
    g.nodes.push_back({cell.id, {p.x, p.y, cell.is_ff() ? 1.0 : 0.0, log_activity(activity, cell.id)}});
    g.node_index.emplace(cell.id, k);
    node_of[ci] = k;
  }

  for (const auto& [a, b] : index.pin_pairs()) {
    const std::size_t na = node_of[a];
    const std::size_t nb = node_of[b];
    if (na == SIZE_MAX || nb == SIZE_MAX) continue;
    g.edges.push_back({std::min(na, nb), std::max(na, nb),
                       manhattan(index.position(a), index.position(b))});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& l, const GraphEdge& r) {
    return std::tie(l.src, l.dst) < std::tie(r.src, r.dst);
  });
  return g;
}

}  // namespace ctsbench
