#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dfq/event_model.hpp"
#include "dfq/ingestion.hpp"

namespace dfq::testing {

inline Timestamp day(int y, int m, int d) { return *parse_iso8601(
    std::to_string(y) + "-" + (m < 10 ? "0" : "") + std::to_string(m) + "-" + (d < 10 ? "0" : "") +
    std::to_string(d)); }

// The 7-event example log: two cases, one tie on 2017-10-02 in case 1.
inline EventLog example_log() {
  EventLog log;
  log.append("1", "Send request", day(2017, 10, 1));
  log.append("1", "Check application", day(2017, 10, 2));
  log.append("1", "Check document", day(2017, 10, 2));
  log.append("1", "Accept", day(2017, 10, 5));
  log.append("2", "Send request", day(2017, 10, 3));
  log.append("2", "Check application", day(2017, 10, 7));
  log.append("2", "Reject", day(2017, 10, 10));
  return log;
}

// Its relation, as listed row by row in the example.
inline Dfr example_dfr() {
  Dfr d;
  d.add("Send request", "Check application", 2);
  d.add("Send request", "Check document", 1);
  d.add("Check application", "Accept", 1);
  d.add("Check document", "Accept", 1);
  d.add("Check application", "Reject", 1);
  return d;
}

inline std::string example_path() { return std::string(DFQ_TEST_DATA) + "/example_log.csv"; }

struct RandomLogSpec {
  std::size_t max_activities = 8;
  std::size_t max_events = 40;
  // Probability that an event reuses the previous event's timestamp.
  double tie_probability = 0.45;
  std::size_t max_cases = 4;
};

// Small log with frequent timestamp ties and events stored out of time
// order. Event ids are assigned in storage order.
inline EventLog random_log(std::mt19937_64& rng, const RandomLogSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> n_events(0, spec.max_events);
  std::uniform_int_distribution<std::size_t> n_acts(1, spec.max_activities);
  std::uniform_int_distribution<std::size_t> n_cases(1, spec.max_cases);
  std::bernoulli_distribution tie(spec.tie_probability);
  std::uniform_int_distribution<Timestamp> step(1, 3);

  const std::size_t events = n_events(rng);
  const std::size_t acts = n_acts(rng);
  const std::size_t cases = n_cases(rng);
  std::uniform_int_distribution<std::size_t> pick_act(0, acts - 1);
  std::uniform_int_distribution<std::size_t> pick_case(0, cases - 1);

  struct Row {
    std::string c, a;
    Timestamp t;
  };
  std::vector<Row> rows;
  std::vector<Timestamp> clock(cases, 0);
  std::vector<bool> started(cases, false);
  for (std::size_t i = 0; i < events; ++i) {
    const std::size_t c = pick_case(rng);
    if (!started[c] || !tie(rng)) clock[c] += step(rng);
    started[c] = true;
    rows.push_back({"c" + std::to_string(c), "A" + std::to_string(pick_act(rng)), clock[c]});
  }
  std::shuffle(rows.begin(), rows.end(), rng);
  EventLog log;
  for (auto& r : rows) log.append(std::move(r.c), std::move(r.a), r.t);
  return log;
}

// Fraction of events that share their timestamp with another event of the
// same case.
inline double tie_fraction(const EventLog& log) {
  std::size_t tied = 0;
  for (const auto& t : log.traces()) {
    for (const auto& e : t.events) {
      const auto same = std::count_if(t.events.begin(), t.events.end(),
                                      [&](const Event& o) { return o.timestamp == e.timestamp; });
      if (same > 1) ++tied;
    }
  }
  return log.event_count() ? static_cast<double>(tied) / static_cast<double>(log.event_count()) : 0.0;
}

// Timestamp block sizes of a trace, in time order.
inline std::vector<std::size_t> block_sizes(const Trace& t) {
  std::vector<Timestamp> times;
  for (const auto& e : t.events) times.push_back(e.timestamp);
  std::sort(times.begin(), times.end());
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i == 0 || times[i] != times[i - 1]) sizes.push_back(0);
    ++sizes.back();
  }
  return sizes;
}

}  // namespace dfq::testing
