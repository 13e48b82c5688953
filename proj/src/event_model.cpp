#include "dfq/event_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "dfq/errors.hpp"

namespace dfq {

Trace& EventLog::trace_for(const std::string& case_id) {
  auto it = index_.find(case_id);
  if (it != index_.end()) return traces_[it->second];
  index_.emplace(case_id, traces_.size());
  traces_.push_back(Trace{case_id, {}});
  return traces_.back();
}

EventId EventLog::append(std::string case_id, std::string activity, Timestamp timestamp) {
  const EventId id = next_id_;
  add_event(Event{id, std::move(case_id), std::move(activity), timestamp});
  return id;
}

void EventLog::add_event(Event event) {
  if (event.case_id.empty()) throw ArgumentError("event has an empty case id");
  if (event.activity.empty()) throw ArgumentError("event has an empty activity");
  if (window_ && !window_->contains(event.timestamp)) {
    throw ArgumentError("event timestamp lies outside the log window");
  }
  next_id_ = std::max(next_id_, event.event_id + 1);
  Trace& t = trace_for(event.case_id);
  t.events.push_back(std::move(event));
  ++event_count_;
}

void EventLog::set_window(TimeWindow w) {
  if (w.start >= w.end) throw ArgumentError("window start must precede window end");
  for (const auto& t : traces_)
    for (const auto& e : t.events)
      if (!w.contains(e.timestamp)) throw ArgumentError("event timestamp lies outside the log window");
  window_ = w;
}

const Trace* EventLog::find(std::string_view case_id) const {
  auto it = index_.find(std::string(case_id));
  return it == index_.end() ? nullptr : &traces_[it->second];
}

std::optional<std::pair<Timestamp, Timestamp>> EventLog::time_range() const {
  std::optional<std::pair<Timestamp, Timestamp>> range;
  for (const auto& t : traces_) {
    for (const auto& e : t.events) {
      if (!range) {
        range.emplace(e.timestamp, e.timestamp);
      } else {
        range->first = std::min(range->first, e.timestamp);
        range->second = std::max(range->second, e.timestamp);
      }
    }
  }
  return range;
}

std::size_t EventLog::distinct_activities() const {
  std::unordered_set<std::string_view> seen;
  for (const auto& t : traces_)
    for (const auto& e : t.events) seen.insert(e.activity);
  return seen.size();
}

std::vector<Event> EventLog::events_by_id() const {
  std::vector<Event> all;
  all.reserve(event_count_);
  for (const auto& t : traces_) all.insert(all.end(), t.events.begin(), t.events.end());
  std::sort(all.begin(), all.end(),
            [](const Event& a, const Event& b) { return a.event_id < b.event_id; });
  return all;
}

void Dfr::add(const std::string& antecedent, const std::string& consequent, Frequency n) {
  if (n == 0) return;
  counts_[ActivityPair{antecedent, consequent}] += n;
}

void Dfr::subtract(const std::string& antecedent, const std::string& consequent, Frequency n) {
  if (n == 0) return;
  auto it = counts_.find(ActivityPair{antecedent, consequent});
  if (it == counts_.end() || it->second < n) {
    throw std::logic_error("directly-follows frequency would become negative");
  }
  it->second -= n;
  if (it->second == 0) counts_.erase(it);
}

Frequency Dfr::get(const std::string& antecedent, const std::string& consequent) const {
  auto it = counts_.find(ActivityPair{antecedent, consequent});
  return it == counts_.end() ? 0 : it->second;
}

Frequency Dfr::mass() const {
  Frequency total = 0;
  for (const auto& [pair, n] : counts_) total += n;
  return total;
}

Dfr merge_dfr(const Dfr& a, const Dfr& b) {
  Dfr out = a;
  for (const auto& [pair, n] : b.counts()) out.add(pair.first, pair.second, n);
  return out;
}

std::vector<DfrRow> dfr_to_rows(const Dfr& d) {
  std::vector<DfrRow> rows;
  rows.reserve(d.size());
  // std::map iteration order is already lexicographic on the pair.
  for (const auto& [pair, n] : d.counts()) rows.push_back(DfrRow{pair.first, pair.second, n});
  return rows;
}

void add_to_delta(DfrDelta& delta, const std::string& antecedent, const std::string& consequent,
                  std::int64_t n) {
  if (n == 0) return;
  auto [it, inserted] = delta.try_emplace(ActivityPair{antecedent, consequent}, 0);
  it->second += n;
  if (it->second == 0) delta.erase(it);
}

Dfr apply_delta(const Dfr& d, const DfrDelta& delta) {
  Dfr out = d;
  for (const auto& [pair, n] : delta) {
    if (n > 0) {
      out.add(pair.first, pair.second, static_cast<Frequency>(n));
    } else {
      out.subtract(pair.first, pair.second, static_cast<Frequency>(-n));
    }
  }
  return out;
}

}  // namespace dfq
