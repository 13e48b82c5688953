#include "dfq/csv.hpp"

#include <ostream>

#include "dfq/errors.hpp"

namespace dfq::csv {

std::optional<Record> Reader::next() {
  int c = in_.get();
  if (c == std::char_traits<char>::eof()) return std::nullopt;

  Record rec;
  rec.line = line_;
  std::string field;
  bool quoted = false;      // inside a quoted section
  bool was_quoted = false;  // current field started with a quote
  bool after_quote = false; // a quoted section just closed

  for (;; c = in_.get()) {
    if (c == std::char_traits<char>::eof()) {
      if (quoted) throw RowError(rec.line, "unterminated quoted field");
      rec.fields.push_back(std::move(field));
      return rec;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == delimiter_) {
      rec.fields.push_back(std::move(field));
      field.clear();
      was_quoted = after_quote = false;
      continue;
    }
    if (ch == '\r' && in_.peek() == '\n') continue;
    if (ch == '\n') {
      ++line_;
      rec.fields.push_back(std::move(field));
      return rec;
    }
    if (after_quote) throw RowError(rec.line, "unexpected character after closing quote");
    if (ch == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
      continue;
    }
    field.push_back(ch);
  }
}

std::string escape(std::string_view field, char delimiter) {
  const bool needs_quotes = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
                            std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(delimiter);
    out << escape(fields[i], delimiter);
  }
  out.put('\n');
}

}  // namespace dfq::csv
