#include "ctsbench/archive.hpp"

#include <bit>

#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"

namespace ctsbench {

using nlohmann::json;


namespace {

template <typename U>
void put_le(std::string& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <typename U>
U get_le(const char* p) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return v;
}

std::string count_str(std::uint64_t v) { return std::to_string(v) + " bytes"; }

}  // namespace

std::string_view to_string(GraphKind kind) { return kind == GraphKind::Raw ? "raw" : "clustered"; }

GraphArchive to_archive(const RawGraph& g, std::uint64_t seed) {
  GraphArchive a;
  a.header.design_name = g.design_name;
  a.header.graph_kind = GraphKind::Raw;
  a.header.node_count = g.nodes.size();
  a.header.edge_count = g.edges.size();
  a.header.feature_dim = static_cast<std::uint32_t>(kRawFeatureDim);
  a.header.seed = seed;
  a.header.config = {{"raw_hops", g.hops}};
  a.node_features.reserve(g.nodes.size() * kRawFeatureDim);
  for (const auto& n : g.nodes) {
    for (double f : n.features) a.node_features.push_back(static_cast<float>(f));
  }
  a.edge_index.resize(2 * g.edges.size());
  a.edge_weights.reserve(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    a.edge_index[e] = static_cast<std::int64_t>(g.edges[e].src);
    a.edge_index[g.edges.size() + e] = static_cast<std::int64_t>(g.edges[e].dst);
    a.edge_weights.push_back(static_cast<float>(g.edges[e].weight));
  }
  return a;
}

GraphArchive to_archive(const ClusteredGraph& g) {
  GraphArchive a;
  a.header.design_name = g.design_name;
  a.header.graph_kind = GraphKind::Clustered;
  a.header.node_count = g.nodes.size();
  a.header.edge_count = g.edges.size();
  a.header.feature_dim = static_cast<std::uint32_t>(kMacroFeatureDim);
  a.header.seed = g.config.seed;
  a.header.config = {{"spread_threshold", g.config.spread_threshold},
                     {"merge_distance", g.config.merge_distance},
                     {"cos_threshold", g.config.cos_threshold}};
  a.node_features.reserve(g.nodes.size() * kMacroFeatureDim);
  for (const auto& n : g.nodes) {
    for (double f : n.features) a.node_features.push_back(static_cast<float>(f));
  }
  a.edge_index.resize(2 * g.edges.size());
  a.edge_weights.reserve(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    a.edge_index[e] = static_cast<std::int64_t>(g.edges[e].src);
    a.edge_index[g.edges.size() + e] = static_cast<std::int64_t>(g.edges[e].dst);
    a.edge_weights.push_back(static_cast<float>(g.edges[e].weight));
  }
  return a;
}

std::string encode_archive(const GraphArchive& a) {
  const ArchiveHeader& h = a.header;
  const json header = {{"schema_version", h.schema_version},
                       {"design_name", h.design_name},
                       {"graph_kind", to_string(h.graph_kind)},
                       {"node_count", h.node_count},
                       {"edge_count", h.edge_count},
                       {"feature_dim", h.feature_dim},
                       {"seed", h.seed},
                       {"config", h.config}};
  const std::string text = header.dump();
  std::string out;
  out.reserve(4 + text.size() + 4 * a.node_features.size() + 8 * a.edge_index.size() +
              4 * a.edge_weights.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  for (float f : a.node_features) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
  for (std::int64_t i : a.edge_index) put_le<std::uint64_t>(out, static_cast<std::uint64_t>(i));
  for (float w : a.edge_weights) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(w));
  return out;
}

GraphArchive decode_archive(std::string_view bytes) {
  if (bytes.size() < 4) throw FormatError("header_length", "4 bytes", count_str(bytes.size()));
  const auto header_len = get_le<std::uint32_t>(bytes.data());
  if (bytes.size() - 4 < header_len) {
    throw FormatError("header", count_str(header_len), count_str(bytes.size() - 4));
  }
  json h;
  try {
    h = json::parse(bytes.substr(4, header_len));
  } catch (const json::parse_error& e) {
    throw FormatError("header", "valid JSON", e.what());
  }
  if (!h.is_object()) throw FormatError("header", "a JSON object", h.type_name());

  const auto need = [&](const char* key, bool ok, const char* what) {
    if (!h.contains(key)) throw FormatError("header." + std::string(key), what, "missing");
    if (!ok) throw FormatError("header." + std::string(key), what, h.at(key).dump());
  };
  need("schema_version", h.contains("schema_version") && h["schema_version"].is_number_integer(), "an integer");
  need("design_name", h.contains("design_name") && h["design_name"].is_string(), "a string");
  need("graph_kind", h.contains("graph_kind") && h["graph_kind"].is_string(), "\"raw\" or \"clustered\"");
  need("node_count", h.contains("node_count") && h["node_count"].is_number_unsigned(), "an unsigned integer");
  need("edge_count", h.contains("edge_count") && h["edge_count"].is_number_unsigned(), "an unsigned integer");
  need("feature_dim", h.contains("feature_dim") && h["feature_dim"].is_number_unsigned(), "4 or 10");
  need("seed", h.contains("seed") && h["seed"].is_number_unsigned(), "an unsigned integer");
  need("config", h.contains("config") && h["config"].is_object(), "an object");

  GraphArchive a;
  ArchiveHeader& hdr = a.header;
  hdr.schema_version = h["schema_version"].get<int>();
  if (hdr.schema_version != kArchiveSchemaVersion) {
    throw FormatError("header.schema_version", std::to_string(kArchiveSchemaVersion),
                      std::to_string(hdr.schema_version));
  }
  hdr.design_name = h["design_name"].get<std::string>();
  const std::string kind = h["graph_kind"].get<std::string>();
  if (kind == "raw") {
    hdr.graph_kind = GraphKind::Raw;
  } else if (kind == "clustered") {
    hdr.graph_kind = GraphKind::Clustered;
  } else {
    throw FormatError("header.graph_kind", "\"raw\" or \"clustered\"", "\"" + kind + "\"");
  }
  hdr.node_count = h["node_count"].get<std::uint64_t>();
  hdr.edge_count = h["edge_count"].get<std::uint64_t>();
  const std::uint64_t dim = h["feature_dim"].get<std::uint64_t>();
  if (dim != kRawFeatureDim && dim != kMacroFeatureDim) {
    throw FormatError("header.feature_dim", "4 or 10", std::to_string(dim));
  }
  const std::uint64_t expected_dim = hdr.graph_kind == GraphKind::Raw ? kRawFeatureDim : kMacroFeatureDim;
  if (dim != expected_dim) {
    throw FormatError("header.feature_dim", std::to_string(expected_dim) + " for " + kind,
                      std::to_string(dim));
  }
  hdr.feature_dim = static_cast<std::uint32_t>(dim);
  hdr.seed = h["seed"].get<std::uint64_t>();
  hdr.config = h["config"];

  // Guard the multiplications below against absurd header counts.
  const std::uint64_t payload = bytes.size() - 4 - header_len;
  if (hdr.node_count > payload || hdr.edge_count > payload) {
    throw FormatError("payload", "counts consistent with file size", count_str(payload));
  }
  const std::uint64_t nf_bytes = 4 * hdr.node_count * dim;
  const std::uint64_t ei_bytes = 16 * hdr.edge_count;
  const std::uint64_t ew_bytes = 4 * hdr.edge_count;
  std::uint64_t offset = 4 + header_len;
  const auto section = [&](const char* name, std::uint64_t len) {
    const std::uint64_t left = bytes.size() - offset;
    if (left < len) throw FormatError(name, count_str(len), count_str(left));
    const char* p = bytes.data() + offset;
    offset += len;
    return p;
  };
  const char* nf = section("node_features", nf_bytes);
  const char* ei = section("edge_index", ei_bytes);
  const char* ew = section("edge_weights", ew_bytes);
  if (offset != bytes.size()) {
    throw FormatError("trailer", "end of file", count_str(bytes.size() - offset) + " extra");
  }

  a.node_features.resize(hdr.node_count * dim);
  for (std::size_t i = 0; i < a.node_features.size(); ++i) {
    a.node_features[i] = std::bit_cast<float>(get_le<std::uint32_t>(nf + 4 * i));
  }
  a.edge_index.resize(2 * hdr.edge_count);
  for (std::size_t i = 0; i < a.edge_index.size(); ++i) {
    const auto v = static_cast<std::int64_t>(get_le<std::uint64_t>(ei + 8 * i));
    if (v < 0 || static_cast<std::uint64_t>(v) >= hdr.node_count) {
      throw FormatError("edge_index", "indices in [0, " + std::to_string(hdr.node_count) + ")",
                        std::to_string(v));
    }
    a.edge_index[i] = v;
  }
  a.edge_weights.resize(hdr.edge_count);
  for (std::size_t i = 0; i < a.edge_weights.size(); ++i) {
    a.edge_weights[i] = std::bit_cast<float>(get_le<std::uint32_t>(ew + 4 * i));
  }
  return a;
}

void write_archive(const GraphArchive& a, const std::string& path) { write_file(path, encode_archive(a)); }

void write_archive(const RawGraph& g, const std::string& path, std::uint64_t seed) {
  write_archive(to_archive(g, seed), path);
}

void write_archive(const ClusteredGraph& g, const std::string& path) { write_archive(to_archive(g), path); }

GraphArchive read_archive(const std::string& path) { return decode_archive(read_file(path)); }

}  // namespace ctsbench
