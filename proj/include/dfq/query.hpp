#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dfq/event_model.hpp"

namespace dfq::query {

// Supported grammar (keywords case-insensitive):
//
//   query     := SELECT '*' FROM DIRECTLYFOLLOWS '(' select ')' [';']
//              | select [';']
//   select    := SELECT projection FROM ident [WHERE predicate {AND predicate}]
//   projection:= '*' | ident {',' ident}
//   predicate := ident ('=' | '<' | '<=' | '>' | '>=') literal
//   literal   := integer | 'string'
//   ident     := bare identifier | "double quoted"
//
// Time literals are integers (epoch microseconds) or ISO-8601 strings.

enum class Comparator { eq, lt, le, gt, ge };

using Literal = std::variant<std::int64_t, std::string>;

struct Predicate {
  std::string column;
  Comparator op = Comparator::eq;
  Literal value;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct BaseSelect {
  std::string table;
  std::optional<std::vector<std::string>> columns;  // nullopt means '*'
  std::vector<Predicate> predicates;                 // conjunction

  friend bool operator==(const BaseSelect&, const BaseSelect&) = default;
};

struct DfWrap {
  BaseSelect inner;

  friend bool operator==(const DfWrap&, const DfWrap&) = default;
};

using QueryAst = std::variant<BaseSelect, DfWrap>;

// Throws SyntaxError with the byte offset of the offending token and the set
// of tokens that would have been accepted there.
QueryAst parse(std::string_view text);

// Canonical text: upper-case keywords, single spaces, identifiers quoted only
// when required. parse(render(ast)) == ast.
std::string render(const QueryAst& ast);

enum class Role { case_id, activity, time };

struct TableSchema {
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::string time_column = "time";

  // Columns in declaration order: case, activity, time.
  std::vector<std::string> columns() const { return {case_column, activity_column, time_column}; }
  // Case-insensitive lookup.
  std::optional<Role> role_of(std::string_view column) const;
};

struct TableEntry {
  std::string name;
  std::shared_ptr<const EventLog> log;
  TableSchema schema;
};

// Registered event tables. Names are unique ignoring case.
class Catalog {
 public:
  // Throws ArgumentError on a duplicate name.
  void register_table(std::string name, std::shared_ptr<const EventLog> log,
                      TableSchema schema = {});
  const TableEntry* find(std::string_view name) const;

 private:
  std::map<std::string, TableEntry> tables_;  // keyed by lower-case name
};

using Value = std::variant<std::int64_t, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

// Rows of the source table that satisfy the predicates, as an event log.
// Event ids are preserved.
EventLog select_log(const BaseSelect& select, const Catalog& catalog);

// BaseSelect yields the projected event rows in event-id order; DfWrap yields
// (Event_Label_P, Event_Label_S, Frequency) rows of the directly-follows
// relation over the selected events. Throws QueryError.
ResultTable execute(const QueryAst& ast, const Catalog& catalog);

void write_csv(const ResultTable& table, std::ostream& out);
void write_text_table(const ResultTable& table, std::ostream& out);

}  // namespace dfq::query
