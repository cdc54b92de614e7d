#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ctsbench/activity.hpp"
#include "ctsbench/netlist.hpp"

namespace ctsbench {

double manhattan(const UnitPoint& a, const UnitPoint& b);

inline constexpr std::size_t kRawFeatureDim = 4;

// features = [unit-x, unit-y, is_ff, ln(1 + toggles)]
struct RawNode {
  std::string cell_id;
  std::array<double, kRawFeatureDim> features{};
  bool operator==(const RawNode&) const = default;
};

// Undirected, stored once with src < dst.
struct GraphEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  double weight = 0.0;
  bool operator==(const GraphEdge&) const = default;
};

struct RawGraph {
  std::string design_name;
  std::vector<RawNode> nodes;  // ascending cell id
  std::vector<GraphEdge> edges;  // ascending (src, dst)
  std::map<std::string, std::size_t> node_index;
  int hops = 1;
  // Nodes whose cell had no activity entry (feature defaults to 0).
  std::size_t missing_activity = 0;

  bool operator==(const RawGraph&) const = default;
};

// Flip-flops plus logic reachable within `hops` driver->sink steps of a
// flip-flop without passing through another flip-flop. hops = 1 is the
// one-hop fan-out set. Result is ascending by cell index.
std::vector<std::size_t> raw_node_set(const NetlistIndex& index, int hops = 1);

// Throws EmptyGraphError when the node set is empty and InvariantError for hops < 1.
RawGraph build_raw_graph(const PlacedNetlist& netlist, const ActivityMap& activity, int hops = 1);

}  // namespace ctsbench
