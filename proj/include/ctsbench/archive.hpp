#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctsbench/coarsen.hpp"
#include "ctsbench/raw_graph.hpp"

namespace ctsbench {

// `.ctsg` graph archive, little-endian throughout:
//
//   u32            header_length
//   header_length  header JSON (UTF-8, sorted keys, no whitespace)
//   f32[N*F]       node_features, row-major
//   i64[2*E]       edge_index, all sources then all targets
//   f32[E]         edge_weights
//
// Header keys: schema_version, design_name, graph_kind ("raw" | "clustered"),
// node_count (N), edge_count (E), feature_dim (F: 4 raw, 10 clustered),
// seed, config.
enum class GraphKind { Raw, Clustered };

std::string_view to_string(GraphKind kind);

inline constexpr int kArchiveSchemaVersion = 1;

struct ArchiveHeader {
  int schema_version = kArchiveSchemaVersion;
  std::string design_name;
  GraphKind graph_kind = GraphKind::Raw;
  std::uint64_t node_count = 0;
  std::uint64_t edge_count = 0;
  std::uint32_t feature_dim = 0;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();

  bool operator==(const ArchiveHeader&) const = default;
};

struct GraphArchive {
  ArchiveHeader header;
  std::vector<float> node_features;
  std::vector<std::int64_t> edge_index;
  std::vector<float> edge_weights;

  bool operator==(const GraphArchive&) const = default;
};

GraphArchive to_archive(const RawGraph& g, std::uint64_t seed = 0);
GraphArchive to_archive(const ClusteredGraph& g);

std::string encode_archive(const GraphArchive& a);
// Validates header fields and header-vs-payload sizes before returning.
// Throws FormatError naming the offending section.
GraphArchive decode_archive(std::string_view bytes);

void write_archive(const GraphArchive& a, const std::string& path);
void write_archive(const RawGraph& g, const std::string& path, std::uint64_t seed = 0);
void write_archive(const ClusteredGraph& g, const std::string& path);
// Throws IoError if unreadable, FormatError if malformed.
GraphArchive read_archive(const std::string& path);

}  // namespace ctsbench
