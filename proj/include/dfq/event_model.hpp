#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dfq {

using EventId = std::uint64_t;
// Microseconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;
using Frequency = std::uint64_t;

struct Event {
  EventId event_id = 0;
  std::string case_id;
  std::string activity;
  Timestamp timestamp = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
  std::string case_id;
  std::vector<Event> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct TimeWindow {
  Timestamp start = 0;
  Timestamp end = 0;

  bool contains(Timestamp t) const noexcept { return start <= t && t <= end; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

// A set of traces with unique case ids, kept in order of first appearance.
//
// Event ids are assigned by append() in increasing order. add_event() keeps
// the caller's id; it is used by transformations that must preserve identity
// (window filtering, query selection) and the caller guarantees uniqueness.
class EventLog {
 public:
  EventLog() = default;

  EventId append(std::string case_id, std::string activity, Timestamp timestamp);
  void add_event(Event event);

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  const Trace* find(std::string_view case_id) const;

  std::size_t case_count() const noexcept { return traces_.size(); }
  std::size_t event_count() const noexcept { return event_count_; }
  bool empty() const noexcept { return traces_.empty(); }

  const std::optional<TimeWindow>& window() const noexcept { return window_; }
  // Throws ArgumentError if an existing event lies outside the window.
  void set_window(TimeWindow w);

  // Min and max timestamp over all events; nullopt for an empty log.
  std::optional<std::pair<Timestamp, Timestamp>> time_range() const;
  std::size_t distinct_activities() const;

  // Every event, sorted by event id.
  std::vector<Event> events_by_id() const;

 private:
  Trace& trace_for(const std::string& case_id);

  std::vector<Trace> traces_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<TimeWindow> window_;
  std::size_t event_count_ = 0;
  EventId next_id_ = 1;
};

using ActivityPair = std::pair<std::string, std::string>;

// Directly-follows relation: (antecedent, consequent) -> frequency. Only
// strictly positive frequencies are stored.
class Dfr {
 public:
  using Map = std::map<ActivityPair, Frequency>;

  Dfr() = default;

  void add(const std::string& antecedent, const std::string& consequent, Frequency n = 1);
  // Removes n from a pair; throws std::logic_error if it would go negative.
  void subtract(const std::string& antecedent, const std::string& consequent, Frequency n);

  Frequency get(const std::string& antecedent, const std::string& consequent) const;
  const Map& counts() const noexcept { return counts_; }
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }

  // Sum of all frequencies.
  Frequency mass() const;

  friend bool operator==(const Dfr&, const Dfr&) = default;

 private:
  Map counts_;
};

struct DfrRow {
  std::string antecedent;
  std::string consequent;
  Frequency frequency = 0;

  friend bool operator==(const DfrRow&, const DfrRow&) = default;
};

Dfr merge_dfr(const Dfr& a, const Dfr& b);

// Rows sorted by (antecedent, consequent), one per stored pair.
std::vector<DfrRow> dfr_to_rows(const Dfr& d);

// Signed change of a Dfr, as produced by incremental maintenance. Zero
// entries are never stored.
using DfrDelta = std::map<ActivityPair, std::int64_t>;

void add_to_delta(DfrDelta& delta, const std::string& antecedent, const std::string& consequent,
                  std::int64_t n);
Dfr apply_delta(const Dfr& d, const DfrDelta& delta);

}  // namespace dfq
