#include "ctsbench/activity.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "ctsbench/csv.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"

namespace ctsbench {

void ActivityMap::insert(const std::string& cell, std::uint64_t toggles) {
  if (!counts_.emplace(cell, toggles).second) throw DuplicateNameError(cell);
}

std::optional<std::uint64_t> ActivityMap::lookup(const std::string& cell) const {
  const auto it = counts_.find(cell);
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

double log_activity(const ActivityMap& activity, const std::string& cell) {
  const auto tc = activity.lookup(cell);
  return tc ? std::log1p(static_cast<double>(*tc)) : 0.0;
}

namespace {

struct SExpr {
  std::size_t offset = 0;
  bool is_list = false;
  bool quoted = false;
  std::string atom;
  std::vector<SExpr> items;

  bool head_is(std::string_view kw) const {
    return is_list && !items.empty() && !items[0].is_list && !items[0].quoted && items[0].atom == kw;
  }
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  SExpr read_document() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "empty document");
    SExpr root = read();
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "trailing content after SAIFILE");
    return root;
  }

 private:
  static bool delimiter(char c) {
    return c == '(' || c == ')' || c == '"' || c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
           c == '\f' || c == '\v';
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.offset = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      e.is_list = true;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw SyntaxError(e.offset, "unbalanced '('");
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')') throw SyntaxError(pos_, "unexpected ')'");
    if (c == '"') {
      ++pos_;
      e.quoted = true;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        e.atom.push_back(text_[pos_++]);
      }
      if (pos_ >= text_.size()) throw SyntaxError(e.offset, "unterminated string");
      ++pos_;
      return e;
    }
    while (pos_ < text_.size() && !delimiter(text_[pos_])) {
      if (text_[pos_] == '\\') {
        if (pos_ + 1 >= text_.size()) throw SyntaxError(pos_, "dangling escape");
        ++pos_;
      }
      e.atom.push_back(text_[pos_++]);
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::uint64_t unsigned_value(const SExpr& e, std::string_view what) {
  if (e.is_list || e.quoted || e.atom.empty()) {
    throw SyntaxError(e.offset, std::string(what) + ": expected a non-negative integer");
  }
  std::uint64_t v = 0;
  const char* first = e.atom.data();
  const char* last = first + e.atom.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw SyntaxError(e.offset, std::string(what) + ": expected a non-negative integer, got '" +
                                    e.atom + "'");
  }
  return v;
}

const std::string& name_of(const SExpr& e, std::string_view what) {
  if (e.is_list || e.atom.empty()) throw SyntaxError(e.offset, std::string(what) + ": expected a name");
  return e.atom;
}

void read_net_entry(const SExpr& entry, ActivityMap& out) {
  if (!entry.is_list || entry.items.empty()) throw SyntaxError(entry.offset, "NET entry: expected (name ...)");
  const std::string& name = name_of(entry.items[0], "NET entry");
  std::optional<std::uint64_t> tc;
  for (std::size_t i = 1; i < entry.items.size(); ++i) {
    const SExpr& field = entry.items[i];
    if (!field.is_list || field.items.size() != 2 || field.items[0].is_list) {
      throw SyntaxError(field.offset, "NET '" + name + "': expected (KEY value)");
    }
    const std::string& key = field.items[0].atom;
    const std::uint64_t v = unsigned_value(field.items[1], key);
    if (key == "TC") {
      if (tc) throw SyntaxError(field.offset, "NET '" + name + "': repeated TC");
      tc = v;
    } else if (key != "T0" && key != "T1" && key != "TX" && key != "TZ" && key != "IG" &&
               key != "TB") {
      throw SyntaxError(field.offset, "NET '" + name + "': unknown field '" + key + "'");
    }
  }
  if (!tc) throw SyntaxError(entry.offset, "NET '" + name + "': missing TC");
  out.insert(name, *tc);
}

void read_instance(const SExpr& inst, ActivityMap& out) {
  if (inst.items.size() < 2) throw SyntaxError(inst.offset, "INSTANCE: missing name");
  name_of(inst.items[1], "INSTANCE");
  for (std::size_t i = 2; i < inst.items.size(); ++i) {
    const SExpr& block = inst.items[i];
    if (block.head_is("NET")) {
      for (std::size_t j = 1; j < block.items.size(); ++j) read_net_entry(block.items[j], out);
    } else if (block.head_is("PORT")) {
      continue;
    } else if (block.head_is("INSTANCE")) {
      throw SyntaxError(block.offset, "nested INSTANCE is not supported");
    } else {
      throw SyntaxError(block.offset, "INSTANCE: expected NET or PORT block");
    }
  }
}

bool needs_escape(char c) {
  return c == '(' || c == ')' || c == '"' || c == '\\' || c == '/' || c == ' ' || c == '\t' || c == '\n' ||
         c == '\r' || c == '\f' || c == '\v';
}

std::string saif_name(const std::string& id) {
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    if (needs_escape(c)) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

ActivityMap parse_saif(std::string_view text) {
  const SExpr root = SExprReader(text).read_document();
  if (!root.head_is("SAIFILE")) throw SyntaxError(root.offset, "expected (SAIFILE ...)");
  ActivityMap out;
  bool seen_version = false;
  for (std::size_t i = 1; i < root.items.size(); ++i) {
    const SExpr& form = root.items[i];
    if (form.head_is("INSTANCE")) {
      read_instance(form, out);
    } else if (form.head_is("SAIFVERSION")) {
      seen_version = true;
    } else if (form.head_is("DURATION")) {
      if (form.items.size() != 2) throw SyntaxError(form.offset, "DURATION: expected one value");
      unsigned_value(form.items[1], "DURATION");
    } else if (form.head_is("DIRECTION") || form.head_is("DESIGN") || form.head_is("DATE") ||
               form.head_is("VENDOR") || form.head_is("PROGRAM_NAME") || form.head_is("VERSION") ||
               form.head_is("DIVIDER") || form.head_is("TIMESCALE")) {
      continue;
    } else {
      throw SyntaxError(form.offset, "unexpected form in SAIFILE");
    }
  }
  if (!seen_version) throw SyntaxError(root.offset, "missing SAIFVERSION");
  return out;
}

std::string write_saif(const ActivityMap& activity, std::string_view top, std::uint64_t duration) {
  std::string out;
  out += "(SAIFILE\n";
  out += "  (SAIFVERSION \"2.0\")\n";
  out += "  (DIRECTION \"backward\")\n";
  out += "  (DURATION " + std::to_string(duration) + ")\n";
  out += "  (INSTANCE " + saif_name(std::string(top)) + "\n";
  out += "    (NET\n";
  for (const auto& [cell, tc] : activity.entries()) {
    // T0/T1 are placeholders; only TC is meaningful in this subset.
    out += "      (" + saif_name(cell) + " (T0 0) (T1 0) (TC " + std::to_string(tc) + "))\n";
  }
  out += "    )\n  )\n)\n";
  return out;
}

ActivityMap parse_activity_csv(std::string_view text) {
  const auto records = csv::parse(text);
  if (records.empty()) throw SyntaxError(1, "missing header");
  const auto& header = records.front().fields;
  if (header.size() != 2 || header[0] != "cell_id" || header[1] != "toggle_count") {
    throw SyntaxError(1, "expected header 'cell_id,toggle_count'");
  }
  ActivityMap out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
    if (rec.fields.size() != 2) throw SyntaxError(rec.line, "expected 2 columns");
    const std::string& id = rec.fields[0];
    const std::string& value = rec.fields[1];
    if (id.empty()) throw SyntaxError(rec.line, "empty cell_id");
    if (!value.empty() && value[0] == '-') {
      throw NegativeToggleError("line " + std::to_string(rec.line) + ": cell '" + id +
                                "' has negative toggle count " + value);
    }
    std::uint64_t v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size()) {
      throw SyntaxError(rec.line, "toggle_count '" + value + "' is not an integer");
    }
    out.insert(id, v);
  }
  return out;
}

std::string write_activity_csv(const ActivityMap& activity) {
  std::string out = "cell_id,toggle_count\n";
  for (const auto& [cell, tc] : activity.entries()) {
    out += csv::escape(cell) + "," + std::to_string(tc) + "\n";
  }
  return out;
}

ActivityMap read_activity_file(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    return parse_activity_csv(text);
  }
  return parse_saif(text);
}

}  // namespace ctsbench
