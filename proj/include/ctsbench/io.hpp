#pragma once

#include <string>
#include <string_view>

namespace ctsbench {

// Whole-file helpers; failures raise IoError naming the path.
std::string read_file(const std::string& path);
// Writes through a sibling temporary and renames, so readers never observe a
// partially written file.
void write_file(const std::string& path, std::string_view bytes);

}  // namespace ctsbench
