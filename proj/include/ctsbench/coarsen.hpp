#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctsbench/activity.hpp"
#include "ctsbench/netlist.hpp"
#include "ctsbench/raw_graph.hpp"

namespace ctsbench {

// Displacement from a flip-flop to the centroid of its one-hop neighbors.
struct GravityVector {
  double dx = 0.0;
  double dy = 0.0;
  bool is_zero() const { return dx == 0.0 && dy == 0.0; }
  bool operator==(const GravityVector&) const = default;
};

// Population standard deviation of member coordinates per axis.
struct Spread {
  double sx = 0.0;
  double sy = 0.0;
  double max() const { return sx > sy ? sx : sy; }
  bool operator==(const Spread&) const = default;
};

struct AtomicCluster {
  std::string owner_ff;
  std::vector<std::string> members;  // ascending id, includes the owner
  UnitPoint centroid;
  Spread spread;
  GravityVector gravity;
  std::optional<std::string> control_net;

  bool operator==(const AtomicCluster&) const = default;
};

struct AtomicClustering {
  // One cluster per flip-flop, in the seeded visiting order.
  std::vector<AtomicCluster> clusters;
  // Logic cells no flip-flop fan-out cone reaches.
  std::size_t unclaimed_logic = 0;
};

struct CoarsenConfig {
  std::uint64_t seed = 0;
  double spread_threshold = 0.05;
  double merge_distance = 0.05;
  double cos_threshold = 0.9;

  // Throws InvariantError: thresholds must be > 0, cos_threshold in (-1, 1].
  void validate() const;
  bool operator==(const CoarsenConfig&) const = default;
};

inline constexpr std::size_t kMacroFeatureDim = 10;

enum MacroFeature : std::size_t {
  kCentroidX = 0,
  kCentroidY,
  kSigmaX,
  kSigmaY,
  kLogSize,
  kNumFF,
  kNumLogic,
  kLogMaxToggle,
  kLogSumToggle,
  kNonzeroToggles,
};

struct MacroNode {
  std::vector<std::size_t> atomics;  // indices into AtomicClustering::clusters, merge order
  std::vector<std::string> cells;    // ascending id
  std::array<double, kMacroFeatureDim> features{};
  bool bypassed = false;  // high-spread singleton, closed to merging

  UnitPoint centroid() const { return {features[kCentroidX], features[kCentroidY]}; }
  bool operator==(const MacroNode&) const = default;
};

// One accepted merge: predicate values measured against the macro as it was
// immediately before the atomic joined.
struct MergeEvent {
  std::size_t atomic = 0;
  std::size_t macro = 0;
  double distance = 0.0;
  double cosine = 0.0;
};

struct ClusteredGraph {
  std::string design_name;
  CoarsenConfig config;
  std::vector<MacroNode> nodes;
  std::vector<GraphEdge> edges;  // ascending (src, dst), src < dst
  std::map<std::string, std::size_t> assignment;  // claimed cell -> macro
  std::size_t atomic_count = 0;
  std::size_t raw_node_count = 0;  // one-hop raw graph size
  std::size_t unclaimed_logic = 0;

  double compression_ratio() const {
    return static_cast<double>(raw_node_count) / static_cast<double>(nodes.size());
  }
  bool operator==(const ClusteredGraph&) const = default;
};

// Flip-flop visiting order: flip-flops in ascending id order, then shuffled by
// ctsbench::shuffle with Rng(seed).
std::vector<std::size_t> flip_flop_order(const NetlistIndex& index, std::uint64_t seed);

AtomicClustering form_atomic_clusters(const PlacedNetlist& netlist, std::uint64_t seed);
AtomicClustering form_atomic_clusters(const NetlistIndex& index, std::uint64_t seed);

Spread spread(std::span<const UnitPoint> points);
Spread spread(const std::vector<std::string>& members, const PlacedNetlist& netlist);

GravityVector gravity_vector(const std::string& ff, const PlacedNetlist& netlist);
GravityVector gravity_vector(const NetlistIndex& index, std::size_t ff);

// a.b / (|a||b|), clamped to [-1, 1]; 0 when either vector is zero.
double cosine_similarity(const GravityVector& a, const GravityVector& b);

// Spread bypass then greedy gravity-aligned merging in clustering order.
// Each non-bypassed atomic joins the earliest-created open macro that has the
// same control net, whose running centroid is within merge_distance, and whose
// seed atomic's gravity has cosine > cos_threshold; otherwise it opens one.
std::vector<MacroNode> merge_clusters(const AtomicClustering& atomics, const CoarsenConfig& cfg,
                                      const PlacedNetlist& netlist, const ActivityMap& activity,
                                      std::vector<MergeEvent>* trace = nullptr);

// Feature vector for an arbitrary set of claimed cells.
std::array<double, kMacroFeatureDim> macro_features(const std::vector<std::string>& cells,
                                                    const PlacedNetlist& netlist,
                                                    const ActivityMap& activity);

// Full three-step coarsening plus centroid-distance edges between macros.
ClusteredGraph build_clustered_graph(const PlacedNetlist& netlist, const ActivityMap& activity,
                                     const CoarsenConfig& cfg,
                                     std::vector<MergeEvent>* trace = nullptr);

}  // namespace ctsbench
