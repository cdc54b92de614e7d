#include "ctsbench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ctsbench/errors.hpp"

namespace ctsbench {

namespace {

constexpr std::array<std::string_view, 8> kStrategyNames = {
    "AREA0", "AREA1", "AREA2", "DELAY0", "DELAY1", "DELAY2", "DELAY3", "DELAY4"};

constexpr std::array<std::string_view, 8> kLogicMasters = {
    "sky130_fd_sc_hd__nand2_1", "sky130_fd_sc_hd__nor2_1",  "sky130_fd_sc_hd__inv_2",
    "sky130_fd_sc_hd__a21oi_1", "sky130_fd_sc_hd__o21ai_1", "sky130_fd_sc_hd__xor2_1",
    "sky130_fd_sc_hd__mux2_1",  "sky130_fd_sc_hd__buf_2"};

std::string padded(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%06zu", prefix, i);
  return buf;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::uint64_t pareto_count(Rng& rng, double scale, double alpha) {
  const double u = 1.0 - rng.uniform();  // (0, 1]
  const double v = scale * std::pow(u, -1.0 / alpha);
  return static_cast<std::uint64_t>(std::min(v, 1.0e7));
}

}  // namespace

std::string_view to_string(SynthStrategy s) { return kStrategyNames[static_cast<std::size_t>(s)]; }

SynthStrategy parse_synth_strategy(std::string_view text) {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
    if (kStrategyNames[i] == text) return static_cast<SynthStrategy>(i);
  }
  throw SyntaxError(0, "unknown synthesis strategy '" + std::string(text) + "'");
}

void PlacementKnobs::validate() const {
  if (std::find(kAspectRatios.begin(), kAspectRatios.end(), aspect_ratio) == kAspectRatios.end()) {
    throw InvariantError("aspect_ratio must be one of 0.7, 1.0, 1.4, 2.0");
  }
  if (io_mode != 0 && io_mode != 1) throw InvariantError("io_mode must be 0 or 1");
  if (!(core_utilization >= 40.0 && core_utilization <= 70.0)) {
    throw InvariantError("core_utilization must lie in [40, 70]");
  }
  const double extra = target_density - core_utilization / 100.0;
  if (!(extra >= -1e-12 && extra <= 0.20 + 1e-12)) {
    throw InvariantError("target_density must be utilization/100 + [0, 0.20]");
  }
  if (time_driven != 0 && time_driven != 1) throw InvariantError("time_driven must be 0 or 1");
  if (routability_driven != 0 && routability_driven != 1) {
    throw InvariantError("routability_driven must be 0 or 1");
  }
}

void CtsKnobs::validate() const {
  const auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  if (!in(sink_max_dia, 35, 70)) throw InvariantError("sink_max_dia must lie in [35, 70]");
  if (!in(max_wire_length, 130, 280)) throw InvariantError("max_wire_length must lie in [130, 280]");
  if (!in(cluster_size, 12, 30)) throw InvariantError("cluster_size must lie in [12, 30]");
  if (!in(buffer_distance, 70, 150)) throw InvariantError("buffer_distance must lie in [70, 150]");
}

PlacementKnobs sample_placement_knobs(Rng& rng) {
  PlacementKnobs k;
  k.synth_strategy = static_cast<SynthStrategy>(rng.below(kStrategyNames.size()));
  k.aspect_ratio = kAspectRatios[rng.below(kAspectRatios.size())];
  k.io_mode = static_cast<int>(rng.below(2));
  k.core_utilization = rng.uniform(40.0, 70.0);
  k.target_density = k.core_utilization / 100.0 + rng.uniform(0.0, 0.20);
  k.time_driven = static_cast<int>(rng.below(2));
  k.routability_driven = static_cast<int>(rng.below(2));
  return k;
}

CtsKnobs sample_cts_knobs(Rng& rng) {
  CtsKnobs k;
  k.sink_max_dia = static_cast<int>(rng.between(35, 70));
  k.max_wire_length = static_cast<int>(rng.between(130, 280));
  k.cluster_size = static_cast<int>(rng.between(12, 30));
  k.buffer_distance = static_cast<int>(rng.between(70, 150));
  return k;
}

std::pair<PlacementKnobs, CtsKnobs> sample_knobs(Rng& rng) {
  PlacementKnobs p = sample_placement_knobs(rng);
  CtsKnobs c = sample_cts_knobs(rng);
  return {p, c};
}

GeneratedDesign generate_netlist(const PlacementKnobs& knobs, std::size_t size, std::uint64_t seed,
                                 const GeneratorOptions& options) {
  knobs.validate();
  if (size < 2) throw InvariantError("generated netlists need at least 2 cells");
  if (!(options.ff_fraction > 0.0 && options.ff_fraction < 1.0)) {
    throw InvariantError("ff_fraction must lie in (0, 1)");
  }
  Rng rng(seed);

  const auto strategy_index = static_cast<int>(knobs.synth_strategy);
  const bool area = is_area(knobs.synth_strategy);
  const int max_depth = area ? 3 : 2;
  const int max_direct = area ? 2 + strategy_index : 3 + (strategy_index - 3) / 2;
  const int bank_min = 4;
  const int bank_max = 8 + (area ? strategy_index : strategy_index - 3) / 2;
  double looseness = 0.55 / knobs.target_density;
  if (knobs.time_driven) looseness *= 0.85;
  if (knobs.routability_driven) looseness *= 1.2;
  const double margin = knobs.io_mode ? 0.08 : 0.04;

  GeneratedDesign out;
  PlacedNetlist& n = out.netlist;
  n.design_name = options.design_name;
  const double die_area = static_cast<double>(size) * kCellArea / (knobs.core_utilization / 100.0);
  n.die_width = std::sqrt(die_area / knobs.aspect_ratio);
  n.die_height = n.die_width * knobs.aspect_ratio;

  const std::size_t n_ff = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(static_cast<double>(size) * options.ff_fraction)), 1,
      size - 1);
  const std::size_t n_logic = size - n_ff;
  const std::size_t n_orphan = n_logic >= 20 ? n_logic * 3 / 100 : 0;
  const std::size_t n_cone = n_logic - n_orphan;

  std::vector<UnitPoint> pos;
  pos.reserve(size);
  const auto place = [&](double x, double y) { pos.push_back({clamp01(x), clamp01(y)}); };

  // Flip-flop banks.
  const int pool = 2 + static_cast<int>(rng.below(3));
  std::vector<std::size_t> bank_of(n_ff);
  std::vector<double> bank_angle;
  std::vector<std::vector<std::size_t>> banks;
  for (std::size_t f = 0; f < n_ff;) {
    const auto want = static_cast<std::size_t>(rng.between(bank_min, bank_max));
    const std::size_t take = std::min(want, n_ff - f);
    const double cx = rng.uniform(margin, 1.0 - margin);
    const double cy = rng.uniform(margin, 1.0 - margin);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::optional<std::string> control;
    if (!rng.bernoulli(0.15)) control = "rst_" + std::to_string(rng.below(pool));
    const double pitch = 0.004 * looseness;
    banks.emplace_back();
    for (std::size_t k = 0; k < take; ++k, ++f) {
      // Row perpendicular to the bank direction, centered on (cx, cy).
      const double t = (static_cast<double>(k) - 0.5 * static_cast<double>(take - 1)) * pitch;
      place(cx - std::sin(angle) * t + rng.normal(0.0, 0.0015 * looseness),
            cy + std::cos(angle) * t + rng.normal(0.0, 0.0015 * looseness));
      PlacedCell c;
      c.id = padded("ff_", f);
      c.kind = CellKind::FlipFlop;
      c.master = control ? "sky130_fd_sc_hd__dfrtp_1" : "sky130_fd_sc_hd__dfxtp_1";
      c.control_net = control;
      n.cells.push_back(std::move(c));
      bank_of[f] = banks.size() - 1;
      banks.back().push_back(f);
    }
    bank_angle.push_back(angle);
  }

  // Cone sizes: every cone gate is assigned to a uniformly chosen flip-flop.
  std::vector<std::size_t> cone_size(n_ff, 0);
  for (std::size_t g = 0; g < n_cone; ++g) ++cone_size[rng.below(n_ff)];

  std::vector<std::vector<std::string>> sinks_of(size);
  std::size_t next_gate = 0;
  const auto cell_index_of_gate = [&](std::size_t g) { return n_ff + g; };

  for (std::size_t f = 0; f < n_ff; ++f) {
    if (cone_size[f] == 0) continue;
    const double angle = bank_angle[bank_of[f]] + rng.normal(0.0, 0.08);
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    // A few cones reach far across the die; their clusters are too spread to merge.
    const double reach = rng.bernoulli(0.05) ? 8.0 : 1.0;
    const double step = rng.uniform(0.006, 0.011) * looseness * reach;
    const UnitPoint origin = pos[f];

    struct Gate {
      std::size_t cell;
      int depth;
    };
    std::vector<Gate> cone;
    const auto direct = static_cast<std::size_t>(rng.between(1, max_direct));
    for (std::size_t k = 0; k < cone_size[f]; ++k) {
      const std::size_t cell = cell_index_of_gate(next_gate++);
      std::size_t driver = f;
      int depth = 1;
      if (k >= direct) {
        // Attach below an existing gate that still has depth budget.
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < cone.size(); ++i) {
          if (cone[i].depth < max_depth) candidates.push_back(i);
        }
        if (!candidates.empty()) {
          const Gate& parent = cone[candidates[rng.below(candidates.size())]];
          driver = parent.cell;
          depth = parent.depth + 1;
        }
      }
      const double along = step * (static_cast<double>(depth) + rng.uniform(-0.3, 0.3));
      const double across = rng.normal(0.0, 0.2 * step);
      place(origin.x + ux * along - uy * across, origin.y + uy * along + ux * across);
      PlacedCell c;
      c.id = padded("g_", cell - n_ff);
      c.kind = CellKind::Logic;
      c.master = kLogicMasters[rng.below(kLogicMasters.size())];
      n.cells.push_back(std::move(c));
      sinks_of[driver].push_back(n.cells.back().id);
      cone.push_back({cell, depth});
    }
    // Deepest gate may close a register-to-register path.
    if (rng.bernoulli(0.15)) {
      const auto deepest = std::max_element(cone.begin(), cone.end(), [](const Gate& a, const Gate& b) {
        return a.depth < b.depth;
      });
      const auto& bank = banks[bank_of[f]];
      const std::size_t target = rng.bernoulli(0.8) ? bank[rng.below(bank.size())] : rng.below(n_ff);
      sinks_of[deepest->cell].push_back(n.cells[target].id);
    }
  }

  // Logic outside every flip-flop cone: short chains among themselves.
  for (std::size_t k = 0; k < n_orphan; ++k) {
    const std::size_t cell = n_ff + n_cone + k;
    place(rng.uniform(margin, 1.0 - margin), rng.uniform(margin, 1.0 - margin));
    PlacedCell c;
    c.id = padded("u_", k);
    c.kind = CellKind::Logic;
    c.master = kLogicMasters[rng.below(kLogicMasters.size())];
    n.cells.push_back(std::move(c));
    if (k > 0 && rng.bernoulli(0.7)) sinks_of[cell - 1].push_back(n.cells.back().id);
  }

  for (std::size_t i = 0; i < size; ++i) {
    n.cells[i].x = pos[i].x * n.die_width;
    n.cells[i].y = pos[i].y * n.die_height;
    // Guard against rounding past the die edge.
    n.cells[i].x = std::min(n.cells[i].x, n.die_width);
    n.cells[i].y = std::min(n.cells[i].y, n.die_height);
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (sinks_of[i].empty()) continue;
    n.nets.push_back({"n_" + n.cells[i].id, n.cells[i].id, std::move(sinks_of[i])});
  }

  for (const auto& c : n.cells) {
    std::uint64_t tc = 0;
    if (c.is_ff()) {
      tc = pareto_count(rng, 20.0, 1.5);
    } else if (!rng.bernoulli(0.12)) {
      tc = pareto_count(rng, 5.0, 1.2);
    }
    out.activity.insert(c.id, tc);
  }

  validate(n);
  return out;
}

QorRecord surrogate_qor(const PlacedNetlist& netlist, const ActivityMap& activity,
                        const RawGraph& raw, const ClusteredGraph& clustered, const CtsKnobs& knobs,
                        std::uint64_t seed) {
  knobs.validate();
  Rng rng(seed);
  const double j1 = rng.uniform(0.9, 1.1);
  const double j2 = rng.uniform(0.9, 1.1);
  const double j3 = rng.uniform(0.9, 1.1);

  const NetlistIndex index(netlist);
  double n_ff = 0.0, mx = 0.0, my = 0.0;
  double lo_x = netlist.die_width, hi_x = 0.0, lo_y = netlist.die_height, hi_y = 0.0;
  for (const auto& c : netlist.cells) {
    if (!c.is_ff()) continue;
    n_ff += 1.0;
    mx += c.x;
    my += c.y;
    lo_x = std::min(lo_x, c.x);
    hi_x = std::max(hi_x, c.x);
    lo_y = std::min(lo_y, c.y);
    hi_y = std::max(hi_y, c.y);
  }
  mx /= n_ff;
  my /= n_ff;
  double sq = 0.0;
  for (const auto& c : netlist.cells) {
    if (c.is_ff()) sq += (c.x - mx) * (c.x - mx) + (c.y - my) * (c.y - my);
  }
  const double ff_disp = std::sqrt(sq / n_ff);
  const double ff_span = (hi_x - lo_x) + (hi_y - lo_y);

  // Longest flip-flop-driven logic chain.
  int max_depth = 0;
  {
    std::vector<int> depth(index.size(), -1);
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (index.cell(i).is_ff()) {
        depth[i] = 0;
        frontier.push_back(i);
      }
    }
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t u : frontier) {
        for (std::size_t v : index.fanout(u)) {
          if (depth[v] >= 0 || index.cell(v).is_ff()) continue;
          depth[v] = depth[u] + 1;
          max_depth = std::max(max_depth, depth[v]);
          next.push_back(v);
        }
      }
      frontier = std::move(next);
    }
  }

  double sum_toggles = 0.0;
  for (const auto& [cell, tc] : activity.entries()) sum_toggles += static_cast<double>(tc);

  const double diag = std::hypot(netlist.die_width, netlist.die_height);
  double raw_weight = 0.0;
  std::uint64_t long_edges = 0;
  const double unit_to_um = (netlist.die_width + netlist.die_height) / 2.0;
  for (const auto& e : raw.edges) {
    raw_weight += e.weight;
    if (e.weight * unit_to_um > knobs.max_wire_length) ++long_edges;
  }

  const double cluster = knobs.cluster_size;
  const auto groups = static_cast<std::uint64_t>(std::ceil(n_ff / cluster));

  QorRecord q;
  q.skew_setup = kSkewFloor + kSkewGain * ff_disp / cluster * j1;
  q.skew_hold = kSkewFloor * 0.5 + 0.6 * kSkewGain * ff_disp / cluster * j2;
  q.clock_buffers = groups * (1 + static_cast<std::uint64_t>(std::floor(ff_span / knobs.buffer_distance)));
  q.clock_inverters = static_cast<std::uint64_t>(std::floor(ff_span / knobs.max_wire_length));
  q.wirelength = raw_weight * diag +
                 static_cast<double>(clustered.nodes.size()) * knobs.sink_max_dia / 2.0 +
                 static_cast<double>(q.clock_buffers) * knobs.buffer_distance / 4.0;
  q.routing_buffers = static_cast<std::uint64_t>(std::floor(q.wirelength / (8.0 * knobs.max_wire_length)));
  q.repair_buffers = long_edges;
  q.dynamic_power = kToggleEnergy * sum_toggles * j3 +
                    kClockPinPower * (n_ff + static_cast<double>(q.clock_buffers + q.clock_inverters));
  q.static_power = kLeakPerCell * (static_cast<double>(netlist.cells.size()) +
                                   static_cast<double>(q.clock_buffers + q.routing_buffers));
  q.total_power = q.dynamic_power + q.static_power;
  q.worst_slack_setup = kClockPeriod - kLogicDelay * max_depth - q.skew_setup;
  q.worst_slack_hold = kHoldMargin - q.skew_hold;
  q.tns_setup = std::min(0.0, q.worst_slack_setup) * (1.0 + n_ff / 10.0);
  q.tns_hold = std::min(0.0, q.worst_slack_hold) * (1.0 + n_ff / 10.0);
  const double die_area = netlist.die_width * netlist.die_height;
  const double used = static_cast<double>(netlist.cells.size()) * kCellArea +
                      static_cast<double>(q.clock_buffers + q.routing_buffers) * kBufferArea;
  q.cell_utilization = std::min(100.0, 100.0 * used / die_area);
  validate(q);
  return q;
}

}  // namespace ctsbench
