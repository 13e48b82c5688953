#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfq/event_model.hpp"

namespace dfq {

struct FlatRow {
  std::string case_id;
  std::string activity;
  Timestamp timestamp = 0;
};

// Unordered event table, the way a relational store would hold it. An
// optional per-case index lists row numbers sorted by (timestamp, row).
struct FlatTable {
  std::vector<FlatRow> rows;
  std::optional<std::unordered_map<std::string, std::vector<std::size_t>>> case_index;

  // Rows in event-id order.
  static FlatTable from_log(const EventLog& log);
  void build_index();
};

// Literal nested self-join:
//
//   for each row x, for each row y of the same case with time(y) > time(x),
//   keep (x, y) unless some row z of that case has time(x) < time(z) < time(y).
//
// O(m^3) in trace length m. This is the comparison target for the native
// operator: do not add indexes, sorting or early pruning here.
Dfr nested_join_dfr(const FlatTable& t);

// The same query answered through the per-case sorted index: for each row
// the successor timestamp block is found by binary search, O(m log m) per
// case. Throws PreconditionError if the index has not been built.
Dfr nested_join_dfr_indexed(const FlatTable& t);

struct StreamResult {
  Dfr dfr;
  std::size_t transferred_rows = 0;
  double sort_seconds = 0;    // producer side: order by (case, timestamp)
  double stream_seconds = 0;  // transfer plus consumer-side computation
};

// Client-side approach: the producer sorts all rows by (case, timestamp) and
// ships every one of them over a bounded channel to a consumer thread, which
// computes the relation from the ordered stream.
StreamResult sorted_stream_dfr(const FlatTable& t);

}  // namespace dfq
