#include "dfq/incremental.hpp"

#include <algorithm>
#include <iterator>

#include "dfq/errors.hpp"

namespace dfq {
namespace {

using ActivityCounts = std::map<std::string, Frequency>;

void add_cross(DfrDelta& delta, const ActivityCounts& from, const ActivityCounts& to,
               std::int64_t sign) {
  for (const auto& [a, na] : from)
    for (const auto& [b, nb] : to) add_to_delta(delta, a, b, sign * static_cast<std::int64_t>(na * nb));
}

}  // namespace

DfrDelta DfrMaintainer::insert_event(const Event& e) {
  if (seen_ids_.contains(e.event_id)) {
    throw DuplicateEventError("event id " + std::to_string(e.event_id) + " already inserted");
  }
  if (e.case_id.empty() || e.activity.empty()) {
    throw ArgumentError("event needs a non-empty case id and activity");
  }

  CaseBlocks& blocks = cases_[e.case_id];
  const ActivityCounts single{{e.activity, 1}};
  DfrDelta delta;

  auto it = blocks.find(e.timestamp);
  const bool joins_block = it != blocks.end();
  auto next = joins_block ? std::next(it) : blocks.upper_bound(e.timestamp);
  const ActivityCounts* pred = nullptr;
  const ActivityCounts* succ = nullptr;
  {
    auto lower = joins_block ? it : next;
    if (lower != blocks.begin()) pred = &std::prev(lower)->second.activities;
    if (next != blocks.end()) succ = &next->second.activities;
  }

  // A new block splits the adjacency pred -> succ; joining an existing
  // block keeps it and only adds the new event's pairs.
  if (!joins_block && pred && succ) add_cross(delta, *pred, *succ, -1);
  if (pred) add_cross(delta, *pred, single, +1);
  if (succ) add_cross(delta, single, *succ, +1);

  Block& block = blocks[e.timestamp];
  auto pos = std::upper_bound(block.events.begin(), block.events.end(), e.event_id,
                              [](EventId id, const Event& other) { return id < other.event_id; });
  block.events.insert(pos, e);
  ++block.activities[e.activity];
  seen_ids_.insert(e.event_id);
  for (const auto& [pair, n] : delta) {
    if (n > 0) {
      current_.add(pair.first, pair.second, static_cast<Frequency>(n));
    } else {
      current_.subtract(pair.first, pair.second, static_cast<Frequency>(-n));
    }
  }
  ++event_count_;
  return delta;
}

}  // namespace dfq
