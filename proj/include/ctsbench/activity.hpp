#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace ctsbench {

// Toggle count per cell id. Absent cells are distinct from zero-toggle cells.
class ActivityMap {
 public:
  ActivityMap() = default;

  // Throws DuplicateNameError if the cell already has an entry.
  void insert(const std::string& cell, std::uint64_t toggles);
  std::optional<std::uint64_t> lookup(const std::string& cell) const;
  bool contains(const std::string& cell) const { return counts_.count(cell) != 0; }
  std::size_t size() const { return counts_.size(); }
  const std::map<std::string, std::uint64_t>& entries() const { return counts_; }

  bool operator==(const ActivityMap&) const = default;

 private:
  std::map<std::string, std::uint64_t> counts_;
};

// SAIF subset:
//   (SAIFILE (SAIFVERSION "2.0") (DURATION n)
//     (INSTANCE top (NET (name (T0 n) (T1 n) (TC n)) ...)))
// Only TC is kept. Other header forms (DIRECTION, DESIGN, DATE, VENDOR,
// PROGRAM_NAME, VERSION, DIVIDER, TIMESCALE) are accepted and ignored.
// Errors: SyntaxError (location = byte offset), DuplicateNameError.
ActivityMap parse_saif(std::string_view text);
std::string write_saif(const ActivityMap& activity, std::string_view top = "top",
                       std::uint64_t duration = 1000000);

// Two-column CSV with header `cell_id,toggle_count`.
// Errors: SyntaxError (location = line), DuplicateNameError, NegativeToggleError.
ActivityMap parse_activity_csv(std::string_view text);
std::string write_activity_csv(const ActivityMap& activity);

// Dispatches on extension: `.csv` goes to the CSV reader, anything else to SAIF.
ActivityMap read_activity_file(const std::string& path);

// ln(1 + toggles) for present cells, 0 for absent ones.
double log_activity(const ActivityMap& activity, const std::string& cell);

}  // namespace ctsbench
