#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfq {

// Base of every error raised by the library. Data errors (bad input files,
// malformed queries) derive from this; programming errors use std::logic_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to an operation (empty window, k == 0, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// An operation was called without its required setup (e.g. missing index).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// A required column is absent from an input table.
class SchemaError : public Error {
 public:
  SchemaError(std::string column, const std::string& what)
      : Error(what), column_(std::move(column)) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

// A single data row could not be converted. `line` is 1-based and refers to
// the physical line on which the record starts.
class RowError : public Error {
 public:
  RowError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateEventError : public Error {
 public:
  using Error::Error;
};

// Query text does not match the grammar. `offset` is a byte offset into the
// query text; `expected` lists the tokens that would have been accepted.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string found_;
};

// Semantic failure while resolving or executing a query (unknown table,
// unknown column, wrong arity for DIRECTLYFOLLOWS, type mismatch).
class QueryError : public Error {
 public:
  using Error::Error;
};

}  // namespace dfq
