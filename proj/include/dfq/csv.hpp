#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dfq::csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // physical line where the record starts, 1-based
};

// RFC-4180 record reader: quoted fields may contain the delimiter, doubled
// quotes and line breaks. Accepts LF and CRLF line endings.
class Reader {
 public:
  Reader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

  // Next record, or nullopt at end of input. Throws RowError on an
  // unterminated quoted field or stray characters after a closing quote.
  std::optional<Record> next();

 private:
  std::istream& in_;
  char delimiter_;
  std::size_t line_ = 1;
};

// Quotes a field if it contains the delimiter, a quote or a line break.
std::string escape(std::string_view field, char delimiter = ',');

void write_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter = ',');

}  // namespace dfq::csv
