#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "ctsbench/activity.hpp"
#include "ctsbench/netlist.hpp"
#include "ctsbench/rng.hpp"

namespace ctsbench::testutil {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ctsbench_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  std::string operator/(const std::string& rel) const { return (path_ / rel).string(); }

 private:
  std::filesystem::path path_;
};

inline PlacedCell ff(std::string id, double x, double y, std::optional<std::string> control = std::nullopt) {
  return {std::move(id), CellKind::FlipFlop, x, y, "dff", std::move(control)};
}

inline PlacedCell logic(std::string id, double x, double y) {
  return {std::move(id), CellKind::Logic, x, y, "nand2", std::nullopt};
}

inline Net net(std::string id, std::string driver, std::vector<std::string> sinks) {
  return {std::move(id), std::move(driver), std::move(sinks)};
}

inline PlacedNetlist make_netlist(double w, double h, std::vector<PlacedCell> cells, std::vector<Net> nets,
                                  std::string name = "t") {
  PlacedNetlist n;
  n.design_name = std::move(name);
  n.die_width = w;
  n.die_height = h;
  n.cells = std::move(cells);
  n.nets = std::move(nets);
  return n;
}

// Random identifier; with `awkward` it may contain characters that need
// quoting or escaping in the interchange formats.
inline std::string random_id(Rng& rng, bool awkward) {
  static const std::string plain = "abcdefghijklmnopqrstuvwxyz0123456789_";
  static const std::string odd = "abcxyz019_[]./\\()\",; -";
  const std::string& alphabet = awkward ? odd : plain;
  const std::size_t len = 1 + rng.below(10);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
  return s;
}

struct RandomNetlistOptions {
  std::size_t min_cells = 2;
  std::size_t max_cells = 200;
  double ff_share_min = 0.05;
  double ff_share_max = 0.6;
  // Cells drawn near a handful of centers instead of uniformly, so that
  // clusters are tight enough to merge.
  bool clumped = true;
  bool awkward_ids = false;
};

// Arbitrary valid netlist: random kinds, positions (including die corners and
// coincident cells), control domains and multi-sink nets. Independent of the
// synthetic corpus generator so property tests see other topologies.
inline PlacedNetlist random_netlist(Rng& rng, const RandomNetlistOptions& opt = {}) {
  const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(opt.min_cells),
                                                              static_cast<std::int64_t>(opt.max_cells)));
  PlacedNetlist nl;
  nl.design_name = "rand";
  nl.die_width = rng.uniform(10.0, 500.0);
  nl.die_height = rng.uniform(10.0, 500.0);
  const double ff_share = rng.uniform(opt.ff_share_min, opt.ff_share_max);
  const std::size_t domains = 1 + rng.below(3);

  std::vector<std::pair<double, double>> centers;
  for (std::size_t c = 0, k = 1 + rng.below(6); c < k; ++c) centers.emplace_back(rng.uniform(), rng.uniform());

  std::set<std::string> used;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id;
    do {
      id = opt.awkward_ids ? random_id(rng, true) : "c" + std::to_string(i);
    } while (!used.insert(id).second);
    double ux, uy;
    const double r = rng.uniform();
    if (r < 0.03) {
      ux = rng.bernoulli(0.5) ? 0.0 : 1.0;
      uy = rng.bernoulli(0.5) ? 0.0 : 1.0;
    } else if (opt.clumped && r < 0.85) {
      const auto& [cx, cy] = centers[rng.below(centers.size())];
      ux = std::clamp(cx + rng.normal(0.0, 0.02), 0.0, 1.0);
      uy = std::clamp(cy + rng.normal(0.0, 0.02), 0.0, 1.0);
    } else {
      ux = rng.uniform();
      uy = rng.uniform();
    }
    const bool is_ff = i == 0 || rng.bernoulli(ff_share);
    PlacedCell c;
    c.id = id;
    c.kind = is_ff ? CellKind::FlipFlop : CellKind::Logic;
    c.x = std::min(ux * nl.die_width, nl.die_width);
    c.y = std::min(uy * nl.die_height, nl.die_height);
    c.master = is_ff ? "dff" : "inv";
    if (is_ff && !rng.bernoulli(0.2)) c.control_net = "ctl" + std::to_string(rng.below(domains));
    nl.cells.push_back(std::move(c));
  }
  if (n >= 2) {
    for (std::size_t d = 0; d < n; ++d) {
      if (!rng.bernoulli(0.6)) continue;
      std::set<std::size_t> sinks;
      const std::size_t want = 1 + rng.below(std::min<std::size_t>(4, n - 1));
      while (sinks.size() < want) {
        const std::size_t s = rng.below(n);
        if (s != d) sinks.insert(s);
      }
      Net net;
      net.id = "n" + std::to_string(nl.nets.size());
      net.driver = nl.cells[d].id;
      for (std::size_t s : sinks) net.sinks.push_back(nl.cells[s].id);
      // Sink order is significant in the format; keep it unsorted sometimes.
      if (rng.bernoulli(0.5)) std::reverse(net.sinks.begin(), net.sinks.end());
      nl.nets.push_back(std::move(net));
    }
  }
  return nl;
}

// Toggle counts for a random subset (`coverage`) of the cells.
inline ActivityMap random_activity(Rng& rng, const PlacedNetlist& nl, double coverage = 1.0) {
  ActivityMap a;
  for (const auto& c : nl.cells) {
    if (!rng.bernoulli(coverage)) continue;
    const double r = rng.uniform();
    std::uint64_t tc = 0;
    if (r < 0.7) tc = rng.below(1000);
    else if (r < 0.95) tc = rng.below(std::uint64_t{1} << 40);
    else tc = rng.next();
    a.insert(c.id, tc);
  }
  return a;
}

}  // namespace ctsbench::testutil
