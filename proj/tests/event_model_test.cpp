#include <gtest/gtest.h>

#include <random>

#include "dfq/dfr_core.hpp"
#include "dfq/errors.hpp"
#include "dfq/event_model.hpp"
#include "support/fixtures.hpp"

using namespace dfq;
using dfq::testing::random_log;
using dfq::testing::example_log;
using dfq::testing::example_dfr;

namespace {

Dfr make(std::initializer_list<std::tuple<const char*, const char*, Frequency>> entries) {
  Dfr d;
  for (const auto& [a, b, n] : entries) d.add(a, b, n);
  return d;
}

EventLog only_case(const EventLog& log, const std::string& case_id) {
  EventLog out;
  for (const auto& e : log.find(case_id)->events) out.add_event(e);
  return out;
}

}  // namespace

TEST(EventLog, AppendAssignsIncreasingIdsAndGroupsByCase) {
  EventLog log;
  EXPECT_EQ(log.append("x", "A", 5), 1u);
  EXPECT_EQ(log.append("y", "B", 1), 2u);
  EXPECT_EQ(log.append("x", "C", 2), 3u);
  ASSERT_EQ(log.case_count(), 2u);
  EXPECT_EQ(log.event_count(), 3u);
  EXPECT_EQ(log.traces()[0].case_id, "x");
  EXPECT_EQ(log.traces()[0].events.size(), 2u);
  EXPECT_EQ(log.find("y")->events.front().activity, "B");
  EXPECT_EQ(log.find("z"), nullptr);
  EXPECT_EQ(log.time_range(), std::make_pair(Timestamp{1}, Timestamp{5}));
}

TEST(EventLog, RejectsEmptyCaseOrActivity) {
  EventLog log;
  EXPECT_THROW(log.append("", "A", 1), ArgumentError);
  EXPECT_THROW(log.append("c", "", 1), ArgumentError);
  EXPECT_TRUE(log.empty());
}

TEST(EventLog, WindowRejectsOutsideEvents) {
  EventLog log;
  log.append("c", "A", 10);
  EXPECT_THROW(log.set_window({11, 20}), ArgumentError);
  EXPECT_THROW(log.set_window({20, 20}), ArgumentError);
  log.set_window({0, 20});
  EXPECT_THROW(log.append("c", "B", 21), ArgumentError);
  log.append("c", "B", 20);
  EXPECT_EQ(log.event_count(), 2u);
}

TEST(Dfr, NeverStoresZero) {
  Dfr d;
  d.add("A", "B", 0);
  EXPECT_TRUE(d.empty());
  d.add("A", "B", 2);
  d.subtract("A", "B", 2);
  EXPECT_TRUE(d.empty());
  EXPECT_THROW(d.subtract("A", "B", 1), std::logic_error);
}

TEST(MergeDfr, Identity) { EXPECT_EQ(merge_dfr(Dfr{}, Dfr{}), Dfr{}); }

TEST(MergeDfr, PointwiseAddition) {
  EXPECT_EQ(merge_dfr(make({{"A", "B", 2}}), make({{"A", "B", 1}, {"B", "C", 1}})),
            make({{"A", "B", 3}, {"B", "C", 1}}));
}

TEST(MergeDfr, CasesOfExampleAddUp) {
  const EventLog log = example_log();
  const Dfr case1 = directly_follows(only_case(log, "1"));
  const Dfr case2 = directly_follows(only_case(log, "2"));
  EXPECT_EQ(merge_dfr(case1, case2), example_dfr());
}

TEST(DfrToRows, Empty) { EXPECT_TRUE(dfr_to_rows(Dfr{}).empty()); }

TEST(DfrToRows, LexicographicOrder) {
  const auto rows = dfr_to_rows(make({{"B", "A", 1}, {"A", "B", 1}}));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (DfrRow{"A", "B", 1}));
  EXPECT_EQ(rows[1], (DfrRow{"B", "A", 1}));
}

TEST(DfrToRows, ExampleHasFiveRows) {
  const auto rows = dfr_to_rows(example_dfr());
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NE(std::find(rows.begin(), rows.end(), DfrRow{"Send request", "Check application", 2}),
            rows.end());
  EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(), [](const DfrRow& a, const DfrRow& b) {
    return std::tie(a.antecedent, a.consequent) < std::tie(b.antecedent, b.consequent);
  }));
}

TEST(DfrDelta, ApplyAndCancel) {
  DfrDelta delta;
  add_to_delta(delta, "A", "C", -1);
  add_to_delta(delta, "A", "B", 1);
  add_to_delta(delta, "A", "B", -1);
  EXPECT_EQ(delta.size(), 1u);
  EXPECT_EQ(apply_delta(make({{"A", "C", 1}}), delta), Dfr{});
}

// Disjoint case sets: relation of the union equals merged relations.
TEST(DfrProperties, UnionOfDisjointLogsMerges) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    const EventLog a = random_log(rng);
    const EventLog b = random_log(rng);
    EventLog both;
    for (const auto& e : a.events_by_id()) both.append("L" + e.case_id, e.activity, e.timestamp);
    for (const auto& e : b.events_by_id()) both.append("R" + e.case_id, e.activity, e.timestamp);
    EXPECT_EQ(directly_follows(both), merge_dfr(directly_follows(a), directly_follows(b)));
  }
}

TEST(DfrProperties, RowsAreDeterministic) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 50; ++iter) {
    const EventLog log = random_log(rng);
    const Dfr first = directly_follows(log);
    const Dfr second = directly_follows(log);
    EXPECT_EQ(dfr_to_rows(first), dfr_to_rows(second));
  }
}

TEST(DfrProperties, BijectiveRelabelingMapsKeys) {
  std::mt19937_64 rng(9);
  auto relabel = [](const std::string& a) { return "x" + a + "!"; };
  for (int iter = 0; iter < 100; ++iter) {
    const EventLog log = random_log(rng);
    EventLog mapped;
    for (const auto& e : log.events_by_id()) mapped.add_event(Event{e.event_id, e.case_id, relabel(e.activity), e.timestamp});
    const Dfr original = directly_follows(log);
    Dfr expected;
    for (const auto& [pair, n] : original.counts()) {
      expected.add(relabel(pair.first), relabel(pair.second), n);
    }
    EXPECT_EQ(directly_follows(mapped), expected);
  }
}
