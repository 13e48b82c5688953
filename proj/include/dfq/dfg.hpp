#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "dfq/event_model.hpp"

namespace dfq {

// Directly-follows graph: the relation plus how often each activity opens or
// closes a trace. Start/end counts take the whole first/last timestamp block
// of a trace, so a tie at either end counts every activity in it.
struct Dfg {
  std::set<std::string> activities;
  Dfr edges;
  std::map<std::string, Frequency> start_counts;
  std::map<std::string, Frequency> end_counts;

  friend bool operator==(const Dfg&, const Dfg&) = default;
};

Dfg build_dfg(const EventLog& log);
// Same, reusing an already computed relation for the edges.
Dfg build_dfg(const EventLog& log, Dfr edges);

// Graphviz digraph. Activities become nodes a0, a1, ... in sorted order and
// are labelled with their names; "start" and "end" are the synthetic
// source and sink. Output is fully determined by the graph.
std::string to_dot(const Dfg& g);

// Canonical JSON object:
//
//   {
//     "activities": ["A", "B"],
//     "edges": [{"freq": 1, "from": "A", "to": "B"}],
//     "ends": {"B": 1},
//     "starts": {"A": 1}
//   }
//
// Keys are sorted, edges ordered by (from, to), two-space indentation and a
// trailing newline.
std::string to_json(const Dfg& g);

// Inverse of to_json. Throws ArgumentError on malformed input or when the
// graph references an activity missing from "activities".
Dfg dfg_from_json(std::string_view text);

}  // namespace dfq
