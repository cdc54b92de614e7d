#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ctsbench {

enum class CellKind { FlipFlop, Logic };

struct PlacedCell {
  std::string id;
  CellKind kind = CellKind::Logic;
  double x = 0.0;  // microns
  double y = 0.0;  // microns
  std::string master;
  // Reset/enable domain label. Only flip-flops carry one.
  std::optional<std::string> control_net;

  bool is_ff() const { return kind == CellKind::FlipFlop; }
  bool operator==(const PlacedCell&) const = default;
};

struct Net {
  std::string id;
  std::string driver;
  std::vector<std::string> sinks;

  bool operator==(const Net&) const = default;
};

struct PlacedNetlist {
  std::string design_name;
  double die_width = 0.0;
  double die_height = 0.0;
  std::vector<PlacedCell> cells;
  std::vector<Net> nets;

  bool operator==(const PlacedNetlist&) const = default;
};

// Point in die-normalized coordinates, both axes in [0, 1].
struct UnitPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const UnitPoint&) const = default;
};

// Throws ReferenceError / InvariantError on the first violated invariant.
void validate(const PlacedNetlist& netlist);

// Parses the `.pnl.json` interchange document. Rejects (never repairs)
// malformed input: SyntaxError, ReferenceError, InvariantError.
PlacedNetlist parse_netlist(std::string_view text);
// Canonical document: sorted object keys, list order preserved, shortest
// round-trip numbers. Equal netlists produce identical bytes.
std::string write_netlist(const PlacedNetlist& netlist);

PlacedNetlist read_netlist_file(const std::string& path);
void write_netlist_file(const PlacedNetlist& netlist, const std::string& path);

std::map<std::string, UnitPoint> normalize_coords(const PlacedNetlist& netlist);

// Connectivity indexed by position in `netlist.cells`. Built once and shared
// by the graph builders.
class NetlistIndex {
 public:
  explicit NetlistIndex(const PlacedNetlist& netlist);

  const PlacedNetlist& netlist() const { return *netlist_; }
  std::size_t size() const { return positions_.size(); }
  std::size_t index_of(const std::string& cell_id) const;
  const PlacedCell& cell(std::size_t i) const { return netlist_->cells[i]; }
  const UnitPoint& position(std::size_t i) const { return positions_[i]; }
  const std::vector<UnitPoint>& positions() const { return positions_; }

  // Distinct sinks of every net the cell drives, ascending by cell index.
  const std::vector<std::size_t>& fanout(std::size_t i) const { return fanout_[i]; }
  // Distinct cells sharing at least one net with the cell (excluding itself).
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_[i]; }
  // Every driver-sink pair (star expansion), unordered, deduplicated, lo < hi.
  const std::vector<std::pair<std::size_t, std::size_t>>& pin_pairs() const { return pairs_; }

 private:
  const PlacedNetlist* netlist_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<UnitPoint> positions_;
  std::vector<std::vector<std::size_t>> fanout_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

}  // namespace ctsbench
