#include "ctsbench/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <tuple>

#include "ctsbench/archive.hpp"
#include "ctsbench/csv.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"

namespace ctsbench {

namespace {

constexpr std::size_t kLeadColumns = 14;

double to_double(const std::string& s, std::size_t line, std::string_view column) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw SyntaxError(line, std::string(column) + ": '" + s + "' is not a number");
  }
  return v;
}

template <typename Int>
Int to_int(const std::string& s, std::size_t line, std::string_view column) {
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw SyntaxError(line, std::string(column) + ": '" + s + "' is not an integer");
  }
  return v;
}

}  // namespace

std::string ManifestRow::run_id() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d", cts_variant_id);
  return placement_id + "/" + buf;
}

const std::vector<std::string>& manifest_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> c = {"design_name",      "placement_id",    "cts_variant_id",
                                  "synth_strategy",   "aspect_ratio",    "io_mode",
                                  "core_utilization", "target_density",  "time_driven",
                                  "routability_driven", "sink_max_dia",  "max_wire_length",
                                  "cluster_size",     "buffer_distance"};
    for (auto name : kQorFieldNames) c.emplace_back(name);
    for (const char* name : {"g_skew", "g_power", "g_wl", "pareto_distance", "raw_graph_path",
                             "clustered_graph_path"}) {
      c.emplace_back(name);
    }
    return c;
  }();
  return columns;
}

std::string write_manifest(const std::vector<ManifestRow>& rows) {
  using csv::format_double;
  std::string out = csv::join(manifest_columns()) + "\n";
  for (const auto& r : rows) {
    std::vector<std::string> f = {r.design_name,
                                  r.placement_id,
                                  std::to_string(r.cts_variant_id),
                                  std::string(to_string(r.placement.synth_strategy)),
                                  format_double(r.placement.aspect_ratio),
                                  std::to_string(r.placement.io_mode),
                                  format_double(r.placement.core_utilization),
                                  format_double(r.placement.target_density),
                                  std::to_string(r.placement.time_driven),
                                  std::to_string(r.placement.routability_driven),
                                  std::to_string(r.cts.sink_max_dia),
                                  std::to_string(r.cts.max_wire_length),
                                  std::to_string(r.cts.cluster_size),
                                  std::to_string(r.cts.buffer_distance)};
    for (std::size_t i = 0; i < kQorFieldCount; ++i) {
      f.push_back(i >= 11 ? std::to_string(static_cast<std::uint64_t>(qor_field(r.qor, i)))
                          : format_double(qor_field(r.qor, i)));
    }
    if (r.score) {
      f.push_back(format_double(r.score->gap.skew));
      f.push_back(format_double(r.score->gap.power));
      f.push_back(format_double(r.score->gap.wirelength));
      f.push_back(format_double(r.score->distance));
    } else {
      f.insert(f.end(), 4, std::string());
    }
    f.push_back(r.raw_graph_path);
    f.push_back(r.clustered_graph_path);
    out += csv::join(f) + "\n";
  }
  return out;
}

std::vector<ManifestRow> parse_manifest(std::string_view text) {
  const auto records = csv::parse(text);
  const auto& columns = manifest_columns();
  if (records.empty() || records.front().fields != columns) {
    throw SyntaxError(1, "manifest header does not match the expected column order");
  }
  std::vector<ManifestRow> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const auto& f = rec.fields;
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != columns.size()) {
      throw SyntaxError(rec.line, "expected " + std::to_string(columns.size()) + " columns, got " +
                                      std::to_string(f.size()));
    }
    const std::size_t line = rec.line;
    ManifestRow row;
    row.design_name = f[0];
    row.placement_id = f[1];
    row.cts_variant_id = to_int<int>(f[2], line, columns[2]);
    row.placement.synth_strategy = parse_synth_strategy(f[3]);
    row.placement.aspect_ratio = to_double(f[4], line, columns[4]);
    row.placement.io_mode = to_int<int>(f[5], line, columns[5]);
    row.placement.core_utilization = to_double(f[6], line, columns[6]);
    row.placement.target_density = to_double(f[7], line, columns[7]);
    row.placement.time_driven = to_int<int>(f[8], line, columns[8]);
    row.placement.routability_driven = to_int<int>(f[9], line, columns[9]);
    row.cts.sink_max_dia = to_int<int>(f[10], line, columns[10]);
    row.cts.max_wire_length = to_int<int>(f[11], line, columns[11]);
    row.cts.cluster_size = to_int<int>(f[12], line, columns[12]);
    row.cts.buffer_distance = to_int<int>(f[13], line, columns[13]);
    std::array<double, 11> real{};
    for (std::size_t i = 0; i < 11; ++i) real[i] = to_double(f[kLeadColumns + i], line, columns[kLeadColumns + i]);
    QorRecord& q = row.qor;
    q.skew_setup = real[0];
    q.skew_hold = real[1];
    q.worst_slack_setup = real[2];
    q.worst_slack_hold = real[3];
    q.tns_setup = real[4];
    q.tns_hold = real[5];
    q.total_power = real[6];
    q.dynamic_power = real[7];
    q.static_power = real[8];
    q.wirelength = real[9];
    q.cell_utilization = real[10];
    q.clock_buffers = to_int<std::uint64_t>(f[kLeadColumns + 11], line, columns[kLeadColumns + 11]);
    q.clock_inverters = to_int<std::uint64_t>(f[kLeadColumns + 12], line, columns[kLeadColumns + 12]);
    q.routing_buffers = to_int<std::uint64_t>(f[kLeadColumns + 13], line, columns[kLeadColumns + 13]);
    q.repair_buffers = to_int<std::uint64_t>(f[kLeadColumns + 14], line, columns[kLeadColumns + 14]);

    const std::size_t g = kLeadColumns + kQorFieldCount;
    const bool any = !f[g].empty() || !f[g + 1].empty() || !f[g + 2].empty() || !f[g + 3].empty();
    if (any) {
      GapScore s;
      s.gap.skew = to_double(f[g], line, columns[g]);
      s.gap.power = to_double(f[g + 1], line, columns[g + 1]);
      s.gap.wirelength = to_double(f[g + 2], line, columns[g + 2]);
      s.distance = to_double(f[g + 3], line, columns[g + 3]);
      row.score = s;
    }
    row.raw_graph_path = f[g + 4];
    row.clustered_graph_path = f[g + 5];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ManifestRow> read_manifest_file(const std::string& path) { return parse_manifest(read_file(path)); }

void write_manifest_file(const std::vector<ManifestRow>& rows, const std::string& path) {
  write_file(path, write_manifest(rows));
}

void sort_manifest(std::vector<ManifestRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ManifestRow& a, const ManifestRow& b) {
    return std::tie(a.design_name, a.placement_id, a.cts_variant_id) <
           std::tie(b.design_name, b.placement_id, b.cts_variant_id);
  });
}

namespace {

std::map<std::string, DesignGroup> group_rows(const std::vector<ManifestRow>& rows) {
  std::map<std::string, DesignGroup> groups;
  for (const auto& r : rows) {
    DesignGroup& g = groups[r.design_name];
    g.design_name = r.design_name;
    g.runs.push_back({r.run_id(), r.qor});
  }
  return groups;
}

}  // namespace

void fill_gaps(std::vector<ManifestRow>& rows, SkewAxis axis) {
  std::map<std::string, GroupMinima> minima;
  for (const auto& [name, group] : group_rows(rows)) minima.emplace(name, group_minima(group, axis));
  for (auto& r : rows) {
    const GapVector g = gap_vector(r.qor, minima.at(r.design_name), axis);
    r.score = GapScore{g, pareto_distance(g)};
  }
}

void audit_manifest(const std::string& corpus_dir, const std::vector<ManifestRow>& rows, SkewAxis axis) {
  namespace fs = std::filesystem;
  std::set<std::string> checked;
  const auto check_archive = [&](const std::string& rel, GraphKind kind) {
    if (rel.empty()) throw MissingArtifactError("(empty path)");
    const std::string path = (fs::path(corpus_dir) / rel).string();
    if (!checked.insert(path).second) return;
    if (!fs::is_regular_file(path)) throw MissingArtifactError(path);
    const GraphArchive a = read_archive(path);
    if (a.header.graph_kind != kind) {
      throw FormatError(path, std::string(to_string(kind)) + " archive",
                        std::string(to_string(a.header.graph_kind)));
    }
  };

  std::map<std::string, GroupMinima> minima;
  for (const auto& [name, group] : group_rows(rows)) minima.emplace(name, group_minima(group, axis));
  for (const auto& r : rows) {
    check_archive(r.raw_graph_path, GraphKind::Raw);
    check_archive(r.clustered_graph_path, GraphKind::Clustered);
    if (!r.score) {
      throw InconsistentGapError("row " + r.design_name + "/" + r.run_id() + " has no gap columns");
    }
    const GapVector g = gap_vector(r.qor, minima.at(r.design_name), axis);
    const double d = pareto_distance(g);
    const auto off = [](double a, double b) { return !(std::abs(a - b) <= kGapTolerance); };
    if (off(g.skew, r.score->gap.skew) || off(g.power, r.score->gap.power) ||
        off(g.wirelength, r.score->gap.wirelength) || off(d, r.score->distance)) {
      throw InconsistentGapError("row " + r.design_name + "/" + r.run_id() +
                                 ": stored gap columns differ from recomputation");
    }
  }
}

std::vector<ManifestRow> assemble_manifest(const std::string& corpus_dir, std::vector<ManifestRow> rows,
                                           SkewAxis axis) {
  sort_manifest(rows);
  audit_manifest(corpus_dir, rows, axis);
  write_manifest_file(rows, (std::filesystem::path(corpus_dir) / "manifest.csv").string());
  return rows;
}

}  // namespace ctsbench
