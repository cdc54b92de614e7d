#include "ctsbench/gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctsbench/errors.hpp"

namespace ctsbench {

const std::array<std::string_view, kQorFieldCount> kQorFieldNames = {
    "skew_setup",      "skew_hold",       "worst_slack_setup", "worst_slack_hold",
    "tns_setup",       "tns_hold",        "total_power",       "dynamic_power",
    "static_power",    "wirelength",      "cell_utilization",  "clock_buffers",
    "clock_inverters", "routing_buffers", "repair_buffers",
};

double qor_field(const QorRecord& q, std::size_t i) {
  switch (i) {
    case 0: return q.skew_setup;
    case 1: return q.skew_hold;
    case 2: return q.worst_slack_setup;
    case 3: return q.worst_slack_hold;
    case 4: return q.tns_setup;
    case 5: return q.tns_hold;
    case 6: return q.total_power;
    case 7: return q.dynamic_power;
    case 8: return q.static_power;
    case 9: return q.wirelength;
    case 10: return q.cell_utilization;
    case 11: return static_cast<double>(q.clock_buffers);
    case 12: return static_cast<double>(q.clock_inverters);
    case 13: return static_cast<double>(q.routing_buffers);
    case 14: return static_cast<double>(q.repair_buffers);
    default: throw InvariantError("QoR field index out of range");
  }
}

void validate(const QorRecord& q) {
  for (std::size_t i = 0; i < kQorFieldCount; ++i) {
    if (!std::isfinite(qor_field(q, i))) {
      throw InvariantError(std::string(kQorFieldNames[i]) + " is not finite");
    }
  }
  if (q.total_power < 0 || q.dynamic_power < 0 || q.static_power < 0) {
    throw InvariantError("power values must be non-negative");
  }
  if (q.wirelength < 0) throw InvariantError("wirelength must be non-negative");
  if (q.cell_utilization < 0 || q.cell_utilization > 100) {
    throw InvariantError("cell_utilization must lie in [0, 100]");
  }
}

GroupMinima group_minima(const DesignGroup& group, SkewAxis axis) {
  if (group.runs.empty()) throw InvariantError("design group '" + group.design_name + "' is empty");
  constexpr double inf = std::numeric_limits<double>::infinity();
  GroupMinima m{inf, inf, inf};
  for (const auto& r : group.runs) {
    m.skew = std::min(m.skew, axis == SkewAxis::Setup ? r.qor.skew_setup : r.qor.skew_hold);
    m.power = std::min(m.power, r.qor.total_power);
    m.wirelength = std::min(m.wirelength, r.qor.wirelength);
  }
  if (!(m.skew > 0)) throw NonPositiveMinError(axis == SkewAxis::Setup ? "skew_setup" : "skew_hold", group.design_name);
  if (!(m.power > 0)) throw NonPositiveMinError("total_power", group.design_name);
  if (!(m.wirelength > 0)) throw NonPositiveMinError("wirelength", group.design_name);
  return m;
}

GapVector gap_vector(const QorRecord& run, const GroupMinima& minima, SkewAxis axis) {
  const double skew = axis == SkewAxis::Setup ? run.skew_setup : run.skew_hold;
  return {skew / minima.skew, run.total_power / minima.power, run.wirelength / minima.wirelength};
}

GapVector gap_vector(const QorRecord& run, const DesignGroup& group, SkewAxis axis) {
  return gap_vector(run, group_minima(group, axis), axis);
}

double pareto_distance(const GapVector& g) {
  const double a = g.skew - 1.0;
  const double b = g.power - 1.0;
  const double c = g.wirelength - 1.0;
  return std::sqrt(a * a + b * b + c * c);
}

std::vector<ScoredRun> score_group(const DesignGroup& group, SkewAxis axis) {
  const GroupMinima minima = group_minima(group, axis);
  std::vector<ScoredRun> out;
  out.reserve(group.runs.size());
  for (const auto& r : group.runs) {
    const GapVector g = gap_vector(r.qor, minima, axis);
    out.push_back({r.run_id, g, pareto_distance(g)});
  }
  std::sort(out.begin(), out.end(), [](const ScoredRun& a, const ScoredRun& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.run_id < b.run_id;
  });
  return out;
}

}  // namespace ctsbench
