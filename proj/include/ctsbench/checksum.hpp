#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>

namespace ctsbench {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string file_checksum(const std::string& path);

// Relative path (generic '/' form) -> file checksum for every regular file
// below `root`, skipping paths for which `exclude(relative_path)` is true.
std::map<std::string, std::string> tree_checksums(
    const std::string& root, const std::function<bool(const std::string&)>& exclude = {});

// Single digest over the sorted "<path>\t<checksum>\n" lines of tree_checksums.
std::string tree_checksum(const std::string& root,
                          const std::function<bool(const std::string&)>& exclude = {});

}  // namespace ctsbench
