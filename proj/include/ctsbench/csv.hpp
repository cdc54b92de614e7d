#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ctsbench::csv {

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC-4180 reader: comma separated, double-quote quoting with "" escapes,
// CRLF or LF line endings. A trailing newline does not produce a record.
// Throws SyntaxError on an unterminated quote or stray characters after one.
std::vector<Record> parse(std::string_view text);

// Quotes the field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);
std::string join(const std::vector<std::string>& fields);

// Shortest decimal that reads back to the same double (std::to_chars).
std::string format_double(double value);

}  // namespace ctsbench::csv
