#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "ctsbench/activity.hpp"
#include "ctsbench/coarsen.hpp"
#include "ctsbench/gap.hpp"
#include "ctsbench/knobs.hpp"
#include "ctsbench/netlist.hpp"
#include "ctsbench/raw_graph.hpp"
#include "ctsbench/rng.hpp"

namespace ctsbench {

// Uniform draws over each knob's range or set, in field order.
PlacementKnobs sample_placement_knobs(Rng& rng);
CtsKnobs sample_cts_knobs(Rng& rng);
std::pair<PlacementKnobs, CtsKnobs> sample_knobs(Rng& rng);

struct GeneratedDesign {
  PlacedNetlist netlist;
  ActivityMap activity;
};

struct GeneratorOptions {
  std::string design_name = "synth";
  double ff_fraction = 0.15;  // share of cells that are flip-flops, (0, 1)
};

// Placed synthetic netlist with a toggle table covering every cell.
//
// Die: area = cells * kCellArea / utilization, height / width = aspect_ratio.
// Flip-flops come in banks of neighboring cells that share one control-net
// domain drawn from a small pool (some banks have none). Each flip-flop owns a
// fan-out cone of logic, depth 1-3, laid out along a per-bank direction with
// positional noise that grows as target density falls; about 5% of cones
// reach far across the die. Cone ends sometimes feed a flip-flop, mostly
// within the same bank. A few percent of logic is
// driven by no flip-flop at all. Toggle counts follow a Pareto tail with a
// share of idle (zero-toggle) logic.
//
// Strategy knobs shape the cones (AREA: narrower and deeper, DELAY: wider and
// shallower, bank size grows with the strategy index); time-driven placement
// tightens the cones and routability-driven placement loosens them.
GeneratedDesign generate_netlist(const PlacementKnobs& knobs, std::size_t size, std::uint64_t seed,
                                 const GeneratorOptions& options = {});

inline constexpr double kCellArea = 6.0;  // um^2 per cell

// Analytic stand-in for post-CTS timing and power. Not physically calibrated;
// it only has to respond to its inputs in the documented directions.
//
//   ff_disp  = RMS distance of flip-flops from their centroid (um)
//   ff_span  = half-perimeter of the flip-flop bounding box (um)
//   groups   = ceil(n_ff / cluster_size)
//   j1, j2, j3 ~ U[0.9, 1.1] from Rng(seed)
//
//   skew_setup        = kSkewFloor + kSkewGain * ff_disp / cluster_size * j1
//   skew_hold         = kSkewFloor * 0.5 + 0.6 * kSkewGain * ff_disp / cluster_size * j2
//   clock_buffers     = groups * (1 + floor(ff_span / buffer_distance))
//   clock_inverters   = floor(ff_span / max_wire_length)
//   wirelength        = raw_edge_weight * die_diagonal + n_macros * sink_max_dia / 2
//                       + clock_buffers * buffer_distance / 4
//   routing_buffers   = floor(wirelength / (8 * max_wire_length))
//   repair_buffers    = # raw edges longer than max_wire_length (um)
//   dynamic_power     = kToggleEnergy * sum_toggles * j3
//                       + kClockPinPower * (n_ff + clock_buffers + clock_inverters)
//   static_power      = kLeakPerCell * (cells + clock_buffers + routing_buffers)
//   total_power       = dynamic_power + static_power
//   worst_slack_setup = kClockPeriod - kLogicDelay * max_depth - skew_setup
//   worst_slack_hold  = kHoldMargin - skew_hold
//   tns_*             = min(0, slack) * (1 + n_ff / 10)
//   cell_utilization  = min(100, 100 * cell_area_total / die_area)
//
// All cells at one point give skew_setup == kSkewFloor and clock_buffers ==
// groups.
inline constexpr double kSkewFloor = 0.010;       // ns
inline constexpr double kSkewGain = 0.02;         // ns per um per sink
inline constexpr double kToggleEnergy = 2.0e-9;   // W per toggle
inline constexpr double kClockPinPower = 4.0e-6;  // W per clock pin
inline constexpr double kLeakPerCell = 1.0e-9;    // W
inline constexpr double kClockPeriod = 10.0;      // ns
inline constexpr double kLogicDelay = 0.35;       // ns per logic level
inline constexpr double kHoldMargin = 0.05;       // ns
inline constexpr double kBufferArea = 3.75;       // um^2

QorRecord surrogate_qor(const PlacedNetlist& netlist, const ActivityMap& activity,
                        const RawGraph& raw, const ClusteredGraph& clustered, const CtsKnobs& knobs,
                        std::uint64_t seed);

}  // namespace ctsbench
