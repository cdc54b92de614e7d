#include "ctsbench/netlist.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"

namespace ctsbench {

using nlohmann::json;

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

void require_fields(const json& obj, const std::string& where,
                    std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) throw SyntaxError(0, where + ": expected an object");
  for (const char* key : required) {
    if (!obj.contains(key)) throw SyntaxError(0, where + ": missing field '" + key + "'");
  }
  for (const auto& [key, _] : obj.items()) {
    const auto known = [&](std::initializer_list<const char*> names) {
      return std::any_of(names.begin(), names.end(), [&](const char* n) { return key == n; });
    };
    if (!known(required) && !known(optional)) {
      throw SyntaxError(0, where + ": unknown field '" + key + "'");
    }
  }
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw SyntaxError(0, where + "." + key + ": expected a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw SyntaxError(0, where + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SyntaxError(0, where + "." + key + ": not finite");
  return d;
}

}  // namespace

void validate(const PlacedNetlist& n) {
  if (!(n.die_width > 0.0) || !(n.die_height > 0.0) || !std::isfinite(n.die_width) ||
      !std::isfinite(n.die_height)) {
    throw InvariantError("die dimensions must be finite and positive");
  }
  std::unordered_set<std::string> ids;
  bool has_ff = false;
  for (const auto& c : n.cells) {
    if (c.id.empty()) throw InvariantError("cell with empty id");
    if (!ids.insert(c.id).second) throw InvariantError("duplicate cell id '" + c.id + "'");
    if (!std::isfinite(c.x) || !std::isfinite(c.y) || c.x < 0.0 || c.y < 0.0 ||
        c.x > n.die_width || c.y > n.die_height) {
      throw InvariantError("cell '" + c.id + "' lies outside the die");
    }
    if (c.kind == CellKind::Logic && c.control_net) {
      throw InvariantError("logic cell '" + c.id + "' carries a control net");
    }
    if (c.control_net && c.control_net->empty()) {
      throw InvariantError("cell '" + c.id + "' has an empty control net");
    }
    has_ff = has_ff || c.is_ff();
  }
  if (!has_ff) throw InvariantError("netlist has no flip-flops");

  std::unordered_set<std::string> net_ids;
  for (const auto& net : n.nets) {
    if (net.id.empty()) throw InvariantError("net with empty id");
    if (!net_ids.insert(net.id).second) throw InvariantError("duplicate net id '" + net.id + "'");
    if (!ids.count(net.driver)) {
      throw ReferenceError("net '" + net.id + "' references unknown driver '" + net.driver + "'");
    }
    if (net.sinks.empty()) throw InvariantError("net '" + net.id + "' has no sinks");
    std::unordered_set<std::string> seen;
    for (const auto& s : net.sinks) {
      if (!ids.count(s)) {
        throw ReferenceError("net '" + net.id + "' references unknown sink '" + s + "'");
      }
      if (s == net.driver) throw InvariantError("net '" + net.id + "' drives its own driver");
      if (!seen.insert(s).second) {
        throw InvariantError("net '" + net.id + "' lists sink '" + s + "' twice");
      }
    }
  }
}

PlacedNetlist parse_netlist(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SyntaxError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }

  require_fields(doc, "document", {"design_name", "die_width", "die_height", "cells", "nets"});
  PlacedNetlist n;
  n.design_name = get_string(doc, "design_name", "document");
  n.die_width = get_number(doc, "die_width", "document");
  n.die_height = get_number(doc, "die_height", "document");

  const json& cells = doc.at("cells");
  if (!cells.is_array()) throw SyntaxError(0, "cells: expected an array");
  n.cells.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string where = "cells[" + std::to_string(i) + "]";
    const json& c = cells[i];
    require_fields(c, where, {"id", "kind", "x", "y", "master"}, {"control_net"});
    PlacedCell cell;
    cell.id = get_string(c, "id", where);
    const std::string kind = get_string(c, "kind", where);
    if (kind == "ff") {
      cell.kind = CellKind::FlipFlop;
    } else if (kind == "logic") {
      cell.kind = CellKind::Logic;
    } else {
      throw SyntaxError(0, where + ".kind: expected \"ff\" or \"logic\", got \"" + kind + "\"");
    }
    cell.x = get_number(c, "x", where);
    cell.y = get_number(c, "y", where);
    cell.master = get_string(c, "master", where);
    if (c.contains("control_net")) cell.control_net = get_string(c, "control_net", where);
    n.cells.push_back(std::move(cell));
  }

  const json& nets = doc.at("nets");
  if (!nets.is_array()) throw SyntaxError(0, "nets: expected an array");
  n.nets.reserve(nets.size());
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const std::string where = "nets[" + std::to_string(i) + "]";
    const json& j = nets[i];
    require_fields(j, where, {"id", "driver", "sinks"});
    Net net;
    net.id = get_string(j, "id", where);
    net.driver = get_string(j, "driver", where);
    const json& sinks = j.at("sinks");
    if (!sinks.is_array()) throw SyntaxError(0, where + ".sinks: expected an array");
    for (const auto& s : sinks) {
      if (!s.is_string()) throw SyntaxError(0, where + ".sinks: expected strings");
      net.sinks.push_back(s.get<std::string>());
    }
    n.nets.push_back(std::move(net));
  }

  validate(n);
  return n;
}

std::string write_netlist(const PlacedNetlist& n) {
  json cells = json::array();
  for (const auto& c : n.cells) {
    json j = {{"id", c.id},
              {"kind", c.is_ff() ? "ff" : "logic"},
              {"x", c.x},
              {"y", c.y},
              {"master", c.master}};
    if (c.control_net) j["control_net"] = *c.control_net;
    cells.push_back(std::move(j));
  }
  json nets = json::array();
  for (const auto& net : n.nets) {
    nets.push_back({{"id", net.id}, {"driver", net.driver}, {"sinks", net.sinks}});
  }
  const json doc = {{"design_name", n.design_name},
                    {"die_width", n.die_width},
                    {"die_height", n.die_height},
                    {"cells", std::move(cells)},
                    {"nets", std::move(nets)}};
  return doc.dump(1) + "\n";
}

PlacedNetlist read_netlist_file(const std::string& path) { return parse_netlist(read_file(path)); }

void write_netlist_file(const PlacedNetlist& netlist, const std::string& path) {
  write_file(path, write_netlist(netlist));
}

std::map<std::string, UnitPoint> normalize_coords(const PlacedNetlist& n) {
  std::map<std::string, UnitPoint> out;
  for (const auto& c : n.cells) out[c.id] = {c.x / n.die_width, c.y / n.die_height};
  return out;
}

NetlistIndex::NetlistIndex(const PlacedNetlist& netlist) : netlist_(&netlist) {
  const auto& cells = netlist.cells;
  index_.reserve(cells.size());
  positions_.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    index_.emplace(cells[i].id, i);
    positions_.push_back({cells[i].x / netlist.die_width, cells[i].y / netlist.die_height});
  }
  fanout_.resize(cells.size());
  neighbors_.resize(cells.size());
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& net : netlist.nets) {
    const std::size_t d = index_of(net.driver);
    std::vector<std::size_t> pins{d};
    for (const auto& s : net.sinks) {
      const std::size_t si = index_of(s);
      fanout_[d].push_back(si);
      pins.push_back(si);
      pairs.emplace(std::min(d, si), std::max(d, si));
    }
    for (std::size_t a : pins) {
      for (std::size_t b : pins) {
        if (a != b) neighbors_[a].push_back(b);
      }
    }
  }
  const auto sort_unique = [](std::vector<std::size_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  for (auto& v : fanout_) sort_unique(v);
  for (auto& v : neighbors_) sort_unique(v);
  pairs_.assign(pairs.begin(), pairs.end());
}

std::size_t NetlistIndex::index_of(const std::string& cell_id) const {
  const auto it = index_.find(cell_id);
  if (it == index_.end()) throw ReferenceError("unknown cell id '" + cell_id + "'");
  return it->second;
}

}  // namespace ctsbench
