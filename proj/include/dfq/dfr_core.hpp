#pragma once

#include <cstddef>

#include "dfq/event_model.hpp"

namespace dfq {

// Index ranges of two adjacent timestamp blocks inside a sorted trace:
// [antecedent_begin, antecedent_end] share one timestamp and
// [consequent_begin, consequent_end] share the next strictly later one.
// Bounds are inclusive.
struct BlockCursor {
  std::size_t antecedent_begin = 0;
  std::size_t antecedent_end = 0;
  std::size_t consequent_begin = 0;
  std::size_t consequent_end = 0;
};

// Orders events by (timestamp, event_id).
Trace sort_trace(Trace t);

// DFR of a single case. The input does not need to be sorted.
Dfr directly_follows_trace(const Trace& t);

// The directly-follows operator over a whole log.
//
// Each trace is sorted by (timestamp, event_id) and walked block by block:
// every event of a timestamp block is paired with every event of the next
// block. Events that share a timestamp never pair with each other. Cost is
// dominated by the per-trace sort, O(|E| log |E|) overall.
Dfr directly_follows(const EventLog& log);

// Literal triple-quantified definition, O(n^3) per trace. Test oracle only.
//
// For every ordered pair (x, y) of events in a case with time(x) < time(y)
// and no event z with time(x) < time(z) < time(y), adds one to
// (act(x), act(y)).
Dfr brute_force_dfr(const EventLog& log);

}  // namespace dfq
