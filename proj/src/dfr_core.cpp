#include "dfq/dfr_core.hpp"

#include <algorithm>
#include <functional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dfq {
namespace {

struct PairViewHash {
  std::size_t operator()(const std::pair<std::string_view, std::string_view>& p) const noexcept {
    const std::size_t h1 = std::hash<std::string_view>{}(p.first);
    const std::size_t h2 = std::hash<std::string_view>{}(p.second);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

// Counts keyed by views into the events of the log being processed; the
// log must outlive the accumulator.
using Accumulator =
    std::unordered_map<std::pair<std::string_view, std::string_view>, Frequency, PairViewHash>;

bool event_less(const Event* a, const Event* b) {
  if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
  return a->event_id < b->event_id;
}

// Last index of the timestamp block that starts at `begin`.
std::size_t block_end(const std::vector<const Event*>& sorted, std::size_t begin) {
  const Timestamp t = sorted[begin]->timestamp;
  std::size_t end = begin;
  while (end + 1 < sorted.size() && sorted[end + 1]->timestamp == t) ++end;
  return end;
}

void accumulate_trace(const Trace& trace, Accumulator& acc, std::vector<const Event*>& sorted) {
  sorted.clear();
  sorted.reserve(trace.events.size());
  for (const auto& e : trace.events) sorted.push_back(&e);
  if (sorted.empty()) return;
  if (!std::is_sorted(sorted.begin(), sorted.end(), event_less)) {
    std::sort(sorted.begin(), sorted.end(), event_less);
  }

  BlockCursor cur;
  cur.antecedent_end = block_end(sorted, 0);
  cur.consequent_begin = cur.antecedent_end + 1;
  while (cur.consequent_begin < sorted.size()) {
    cur.consequent_end = block_end(sorted, cur.consequent_begin);
    for (std::size_t i = cur.antecedent_begin; i <= cur.antecedent_end; ++i) {
      for (std::size_t j = cur.consequent_begin; j <= cur.consequent_end; ++j) {
        ++acc[{sorted[i]->activity, sorted[j]->activity}];
      }
    }
    cur.antecedent_begin = cur.consequent_begin;
    cur.antecedent_end = cur.consequent_end;
    cur.consequent_begin = cur.antecedent_end + 1;
  }
}

Dfr to_dfr(const Accumulator& acc) {
  Dfr out;
  for (const auto& [pair, n] : acc) out.add(std::string(pair.first), std::string(pair.second), n);
  return out;
}

}  // namespace

Trace sort_trace(Trace t) {
  std::stable_sort(t.events.begin(), t.events.end(), [](const Event& a, const Event& b) {
    return event_less(&a, &b);
  });
  return t;
}

Dfr directly_follows_trace(const Trace& t) {
  Accumulator acc;
  std::vector<const Event*> scratch;
  accumulate_trace(t, acc, scratch);
  return to_dfr(acc);
}

Dfr directly_follows(const EventLog& log) {
  Accumulator acc;
  std::vector<const Event*> scratch;
  for (const auto& t : log.traces()) accumulate_trace(t, acc, scratch);
  return to_dfr(acc);
}

Dfr brute_force_dfr(const EventLog& log) {
  Dfr out;
  for (const auto& trace : log.traces()) {
    const auto& ev = trace.events;
    for (const auto& x : ev) {
      for (const auto& y : ev) {
        if (!(x.timestamp < y.timestamp)) continue;
        bool between = false;
        for (const auto& z : ev) {
          if (x.timestamp < z.timestamp && z.timestamp < y.timestamp) {
            between = true;
            break;
          }
        }
        if (!between) out.add(x.activity, y.activity);
      }
    }
  }
  return out;
}

}  // namespace dfq
