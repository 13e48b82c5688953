#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dfq/event_model.hpp"

namespace dfq {

// Keeps the directly-follows relation of an insert-only event stream up to
// date, the way a row trigger would.
//
// Each case is stored as an ordered map from timestamp to the block of
// events sharing it, so an insert costs O(log m) to position plus work
// proportional to the distinct activities of the neighbouring blocks.
// Events may arrive in any order.
//
// Not thread-safe: insert_event calls must be serialized by the caller.
class DfrMaintainer {
 public:
  // Adds an event and returns the change it caused. Afterwards snapshot()
  // equals the batch relation of every event inserted so far. Throws
  // DuplicateEventError (state unchanged) if the event id was seen before.
  DfrDelta insert_event(const Event& e);

  Dfr snapshot() const { return current_; }
  const Dfr& current() const noexcept { return current_; }
  std::size_t event_count() const noexcept { return event_count_; }

 private:
  struct Block {
    std::vector<Event> events;  // sorted by event_id
    std::map<std::string, Frequency> activities;
  };
  using CaseBlocks = std::map<Timestamp, Block>;

  std::unordered_map<std::string, CaseBlocks> cases_;
  std::unordered_set<EventId> seen_ids_;
  Dfr current_;
  std::size_t event_count_ = 0;
};

}  // namespace dfq
