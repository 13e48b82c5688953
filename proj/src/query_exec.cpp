#include <algorithm>
#include <cctype>
#include <iomanip>

#include "dfq/csv.hpp"
#include "dfq/dfr_core.hpp"
#include "dfq/errors.hpp"
#include "dfq/ingestion.hpp"
#include "dfq/query.hpp"

namespace dfq::query {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool iequals(std::string_view a, std::string_view b) { return lower(a) == lower(b); }

const TableEntry& resolve_table(const BaseSelect& sel, const Catalog& catalog) {
  const TableEntry* entry = catalog.find(sel.table);
  if (!entry) throw QueryError("unknown table '" + sel.table + "'");
  return *entry;
}

Role resolve_column(const TableEntry& table, const std::string& column) {
  auto role = table.schema.role_of(column);
  if (!role) throw QueryError("unknown column '" + column + "' in table '" + table.name + "'");
  return *role;
}

template <typename T>
bool compare(const T& lhs, Comparator op, const T& rhs) {
  switch (op) {
    case Comparator::eq: return lhs == rhs;
    case Comparator::lt: return lhs < rhs;
    case Comparator::le: return lhs <= rhs;
    case Comparator::gt: return lhs > rhs;
    case Comparator::ge: return lhs >= rhs;
  }
  return false;
}

// A predicate with its column role resolved and its literal converted to the
// column's type.
struct BoundPredicate {
  Role role;
  Comparator op;
  Timestamp time_value = 0;
  std::string text_value;

  bool matches(const Event& e) const {
    switch (role) {
      case Role::case_id: return compare(e.case_id, op, text_value);
      case Role::activity: return compare(e.activity, op, text_value);
      case Role::time: return compare(e.timestamp, op, time_value);
    }
    return false;
  }
};

BoundPredicate bind(const TableEntry& table, const Predicate& p) {
  BoundPredicate b;
  b.role = resolve_column(table, p.column);
  b.op = p.op;
  if (b.role == Role::time) {
    if (const auto* v = std::get_if<std::int64_t>(&p.value)) {
      b.time_value = *v;
    } else {
      const auto& text = std::get<std::string>(p.value);
      auto t = parse_iso8601(text);
      if (!t) throw QueryError("cannot interpret '" + text + "' as a timestamp for column '" + p.column + "'");
      b.time_value = *t;
    }
  } else if (const auto* v = std::get_if<std::int64_t>(&p.value)) {
    b.text_value = std::to_string(*v);
  } else {
    b.text_value = std::get<std::string>(p.value);
  }
  return b;
}

std::vector<BoundPredicate> bind_all(const TableEntry& table, const BaseSelect& sel) {
  std::vector<BoundPredicate> out;
  for (const auto& p : sel.predicates) out.push_back(bind(table, p));
  return out;
}

bool matches_all(const std::vector<BoundPredicate>& preds, const Event& e) {
  return std::all_of(preds.begin(), preds.end(), [&e](const BoundPredicate& p) { return p.matches(e); });
}

void check_operator_arity(const TableEntry& table, const BaseSelect& sel) {
  if (!sel.columns) return;  // '*' always binds the three role columns
  static const std::string kMessage =
      "DIRECTLYFOLLOWS requires three columns: the case, the activity, and the timestamp";
  if (sel.columns->size() != 3) {
    throw QueryError(kMessage + " (got " + std::to_string(sel.columns->size()) + ")");
  }
  bool seen[3] = {false, false, false};
  for (const auto& c : *sel.columns) {
    const Role r = resolve_column(table, c);
    if (seen[static_cast<int>(r)]) throw QueryError(kMessage + " (column '" + c + "' repeats a role)");
    seen[static_cast<int>(r)] = true;
  }
}

std::string value_text(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return std::get<std::string>(v);
}

}  // namespace

std::optional<Role> TableSchema::role_of(std::string_view column) const {
  if (iequals(column, case_column)) return Role::case_id;
  if (iequals(column, activity_column)) return Role::activity;
  if (iequals(column, time_column)) return Role::time;
  return std::nullopt;
}

void Catalog::register_table(std::string name, std::shared_ptr<const EventLog> log,
                             TableSchema schema) {
  if (name.empty()) throw ArgumentError("table name must not be empty");
  if (!log) throw ArgumentError("table '" + name + "' has no data");
  const auto cols = schema.columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j)
      if (iequals(cols[i], cols[j])) throw ArgumentError("table '" + name + "' repeats column '" + cols[i] + "'");
  std::string key = lower(name);
  if (tables_.contains(key)) throw ArgumentError("table '" + name + "' is already registered");
  tables_.emplace(std::move(key), TableEntry{std::move(name), std::move(log), std::move(schema)});
}

const TableEntry* Catalog::find(std::string_view name) const {
  auto it = tables_.find(lower(name));
  return it == tables_.end() ? nullptr : &it->second;
}

EventLog select_log(const BaseSelect& sel, const Catalog& catalog) {
  const TableEntry& table = resolve_table(sel, catalog);
  if (sel.columns)
    for (const auto& c : *sel.columns) resolve_column(table, c);
  const auto preds = bind_all(table, sel);
  EventLog out;
  for (const auto& e : table.log->events_by_id()) {
    if (matches_all(preds, e)) out.add_event(e);
  }
  return out;
}

ResultTable execute(const QueryAst& ast, const Catalog& catalog) {
  ResultTable result;
  if (const auto* wrap = std::get_if<DfWrap>(&ast)) {
    const TableEntry& table = resolve_table(wrap->inner, catalog);
    check_operator_arity(table, wrap->inner);
    const Dfr dfr = directly_follows(select_log(wrap->inner, catalog));
    result.columns = {"Event_Label_P", "Event_Label_S", "Frequency"};
    for (auto& row : dfr_to_rows(dfr)) {
      result.rows.push_back({std::move(row.antecedent), std::move(row.consequent),
                             static_cast<std::int64_t>(row.frequency)});
    }
    return result;
  }

  const auto& sel = std::get<BaseSelect>(ast);
  const TableEntry& table = resolve_table(sel, catalog);
  std::vector<Role> roles;
  if (sel.columns) {
    for (const auto& c : *sel.columns) {
      roles.push_back(resolve_column(table, c));
      result.columns.push_back(c);
    }
  } else {
    roles = {Role::case_id, Role::activity, Role::time};
    result.columns = table.schema.columns();
  }
  const EventLog selected = select_log(sel, catalog);
  for (const auto& e : selected.events_by_id()) {
    std::vector<Value> row;
    row.reserve(roles.size());
    for (Role r : roles) {
      switch (r) {
        case Role::case_id: row.emplace_back(e.case_id); break;
        case Role::activity: row.emplace_back(e.activity); break;
        case Role::time: row.emplace_back(static_cast<std::int64_t>(e.timestamp)); break;
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  csv::write_row(out, table.columns);
  std::vector<std::string> fields;
  for (const auto& row : table.rows) {
    fields.clear();
    for (const auto& v : row) fields.push_back(value_text(v));
    csv::write_row(out, fields);
  }
}

void write_text_table(const ResultTable& table, std::ostream& out) {
  std::vector<std::size_t> width(table.columns.size());
  for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
  for (const auto& row : table.rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], value_text(row[c]).size());

  auto line = [&](const std::vector<std::string>& cells, const std::vector<bool>& right) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out << " | ";
      out << (right[c] ? std::right : std::left) << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    out << std::left << '\n';
  };

  line(table.columns, std::vector<bool>(table.columns.size(), false));
  for (std::size_t c = 0; c < width.size(); ++c) {
    if (c) out << "-+-";
    out << std::string(width[c], '-');
  }
  out << '\n';
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    std::vector<bool> right;
    for (const auto& v : row) {
      cells.push_back(value_text(v));
      right.push_back(std::holds_alternative<std::int64_t>(v));
    }
    line(cells, right);
  }
  out << "(" << table.rows.size() << (table.rows.size() == 1 ? " row)\n" : " rows)\n");
}

}  // namespace dfq::query
