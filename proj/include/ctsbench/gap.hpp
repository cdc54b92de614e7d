#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ctsbench {

// Post-CTS quality-of-results labels for one run.
struct QorRecord {
  double skew_setup = 0.0;         // ns
  double skew_hold = 0.0;          // ns
  double worst_slack_setup = 0.0;  // ns
  double worst_slack_hold = 0.0;   // ns
  double tns_setup = 0.0;          // ns
  double tns_hold = 0.0;           // ns
  double total_power = 0.0;        // W
  double dynamic_power = 0.0;      // W
  double static_power = 0.0;       // W
  double wirelength = 0.0;         // um
  double cell_utilization = 0.0;   // %
  std::uint64_t clock_buffers = 0;
  std::uint64_t clock_inverters = 0;
  std::uint64_t routing_buffers = 0;
  std::uint64_t repair_buffers = 0;

  bool operator==(const QorRecord&) const = default;
};

inline constexpr std::size_t kQorFieldCount = 15;
// Canonical column names, in manifest order.
extern const std::array<std::string_view, kQorFieldCount> kQorFieldNames;

// Field access by canonical position; counts are returned as doubles.
double qor_field(const QorRecord& q, std::size_t i);
// Throws InvariantError when a range invariant is violated.
void validate(const QorRecord& q);

struct GapVector {
  double skew = 0.0;
  double power = 0.0;
  double wirelength = 0.0;
  bool operator==(const GapVector&) const = default;
};

// Which skew column feeds the skew gap; setup by default.
enum class SkewAxis { Setup, Hold };

struct GapRun {
  std::string run_id;
  QorRecord qor;
};

struct DesignGroup {
  std::string design_name;
  std::vector<GapRun> runs;
};

struct GroupMinima {
  double skew = 0.0;
  double power = 0.0;
  double wirelength = 0.0;
};

// Throws NonPositiveMinError when any minimum is <= 0, and InvariantError on
// an empty group.
GroupMinima group_minima(const DesignGroup& group, SkewAxis axis = SkewAxis::Setup);

GapVector gap_vector(const QorRecord& run, const GroupMinima& minima, SkewAxis axis = SkewAxis::Setup);
GapVector gap_vector(const QorRecord& run, const DesignGroup& group, SkewAxis axis = SkewAxis::Setup);

// Euclidean distance from [1, 1, 1].
double pareto_distance(const GapVector& g);

struct ScoredRun {
  std::string run_id;
  GapVector gap;
  double distance = 0.0;
};

// Ascending distance, ties by run id.
std::vector<ScoredRun> score_group(const DesignGroup& group, SkewAxis axis = SkewAxis::Setup);

}  // namespace ctsbench
