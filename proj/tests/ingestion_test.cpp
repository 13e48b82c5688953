#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfq/dfr_core.hpp"
#include "dfq/errors.hpp"
#include "dfq/ingestion.hpp"
#include "support/fixtures.hpp"

using namespace dfq;
using dfq::testing::day;
using dfq::testing::example_log;
using dfq::testing::example_path;

namespace {

EventLog parse(const std::string& text, CsvConfig cfg = {}) {
  std::istringstream in(text);
  return read_csv(in, cfg);
}

// Same events, ignoring ids.
bool same_events(const EventLog& a, const EventLog& b) {
  auto key = [](const EventLog& log) {
    std::vector<std::tuple<std::string, std::string, Timestamp>> out;
    for (const auto& e : log.events_by_id()) out.emplace_back(e.case_id, e.activity, e.timestamp);
    return out;
  };
  return key(a) == key(b);
}

}  // namespace

TEST(Iso8601, ParsesDatesAndTimes) {
  EXPECT_EQ(parse_iso8601("1970-01-01"), Timestamp{0});
  EXPECT_EQ(parse_iso8601("1970-01-02"), Timestamp{86'400'000'000});
  EXPECT_EQ(parse_iso8601("2017-10-01T00:00:00Z"), parse_iso8601("2017-10-01"));
  EXPECT_EQ(parse_iso8601("2017-10-01 12:30"), *parse_iso8601("2017-10-01") + 45'000'000'000LL);
  EXPECT_EQ(parse_iso8601("1970-01-01T00:00:00.5+00:00"), Timestamp{500'000});
  EXPECT_EQ(parse_iso8601("1970-01-01T00:00:01.000001Z"), Timestamp{1'000'001});
}

TEST(Iso8601, RejectsMalformed) {
  for (const char* bad : {"not-a-date", "", "2017-13-01", "2017-02-30", "2017-10-01T25:00",
                          "2017-10-01T10:00+02:00", "2017-10-01x", "17-10-01"}) {
    EXPECT_FALSE(parse_iso8601(bad).has_value()) << bad;
  }
}

TEST(Iso8601, FormatRoundTrips) {
  for (Timestamp t : {Timestamp{0}, day(2017, 10, 7), day(2017, 10, 7) + 1234567, Timestamp{-1'000'000}}) {
    EXPECT_EQ(parse_iso8601(format_iso8601(t)), t) << format_iso8601(t);
  }
  EXPECT_EQ(format_iso8601(day(2017, 10, 1)), "2017-10-01T00:00:00Z");
}

TEST(ReadCsv, ExampleFile) {
  const EventLog log = read_csv(example_path(), CsvConfig{});
  ASSERT_EQ(log.case_count(), 2u);
  EXPECT_EQ(log.find("1")->events.size(), 4u);
  EXPECT_EQ(log.find("2")->events.size(), 3u);
  EXPECT_TRUE(same_events(log, example_log()));
}

TEST(ReadCsv, HeaderOnlyIsEmpty) {
  const EventLog log = parse("case,activity,time\n");
  EXPECT_EQ(log.case_count(), 0u);
  EXPECT_EQ(log.event_count(), 0u);
}

TEST(ReadCsv, BadTimestampReportsLine) {
  try {
    parse("case,activity,time\n1,A,2017-10-01\n1,B,not-a-date\n");
    FAIL() << "expected RowError";
  } catch (const RowError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("not-a-date"), std::string::npos);
  }
}

TEST(ReadCsv, MissingColumnIsSchemaError) {
  try {
    parse("case,activity,when\n1,A,2017-10-01\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.column(), "time");
  }
}

TEST(ReadCsv, RowErrors) {
  EXPECT_THROW(parse("case,activity,time\n1,A\n"), RowError);
  EXPECT_THROW(parse("case,activity,time\n,A,2017-10-01\n"), RowError);
  EXPECT_THROW(parse("case,activity,time\n1,,2017-10-01\n"), RowError);
  EXPECT_THROW(parse("case,activity,time\n1,\"A,2017-10-01\n"), RowError);
}

TEST(ReadCsv, MissingFileIsIoError) {
  EXPECT_THROW(read_csv(std::filesystem::path("/nonexistent/dir/x.csv"), CsvConfig{}), IoError);
}

TEST(ReadCsv, QuotedFieldsAndReorderedColumns) {
  const EventLog log = parse(
      "time,extra,activity,case\r\n"
      "2017-10-01,x,\"Check, \"\"fast\"\"\",c1\r\n"
      "2017-10-02,y,\"multi\nline\",c1\r\n");
  ASSERT_EQ(log.event_count(), 2u);
  const auto& events = log.find("c1")->events;
  EXPECT_EQ(events[0].activity, "Check, \"fast\"");
  EXPECT_EQ(events[1].activity, "multi\nline");
  EXPECT_EQ(events[1].timestamp, day(2017, 10, 2));
}

TEST(ReadCsv, NoHeaderUsesIndices) {
  CsvConfig cfg;
  cfg.has_header = false;
  cfg.case_column = "2";
  cfg.activity_column = "0";
  cfg.time_column = "1";
  cfg.time_format = TimeFormat::epoch_micros_integer;
  cfg.delimiter = ';';
  const EventLog log = parse("A;10;k\nB;20;k\n", cfg);
  ASSERT_EQ(log.event_count(), 2u);
  EXPECT_EQ(log.find("k")->events[1].activity, "B");
  EXPECT_EQ(log.find("k")->events[1].timestamp, 20);
}

TEST(ReadCsv, ConfigValidation) {
  CsvConfig cfg;
  cfg.activity_column = "case";
  EXPECT_THROW(validate(cfg), ArgumentError);
}

TEST(WriteCsv, RoundTripBothFormats) {
  std::mt19937_64 rng(3);
  for (auto fmt : {TimeFormat::epoch_micros_integer, TimeFormat::iso8601_utc}) {
    CsvConfig cfg;
    cfg.time_format = fmt;
    for (int iter = 0; iter < 20; ++iter) {
      EventLog log = dfq::testing::random_log(rng);
      // Activities with delimiters and quotes must survive.
      EventLog tricky;
      for (const auto& e : log.events_by_id()) tricky.append(e.case_id, e.activity + ",\"q\"", e.timestamp);
      std::stringstream buf;
      write_csv(tricky, buf, cfg);
      EXPECT_TRUE(same_events(read_csv(buf, cfg), tricky));
    }
  }
}

TEST(SniffTimeFormat, DetectsBoth) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto epoch = dir / "dfq_sniff_epoch.csv";
  {
    std::ofstream(epoch) << "case,activity,time\n1,A,1506816000000000\n";
  }
  EXPECT_EQ(sniff_time_format(epoch, CsvConfig{}), TimeFormat::epoch_micros_integer);
  EXPECT_EQ(sniff_time_format(example_path(), CsvConfig{}), TimeFormat::iso8601_utc);
  std::filesystem::remove(epoch);
}

TEST(FilterWindow, KeepsInclusiveRange) {
  const EventLog out = filter_window(example_log(), day(2017, 10, 1), day(2017, 10, 5));
  EXPECT_EQ(out.find("1")->events.size(), 4u);
  EXPECT_EQ(out.find("2")->events.size(), 1u);
  ASSERT_TRUE(out.window());
  EXPECT_EQ(out.window()->start, day(2017, 10, 1));
  EXPECT_EQ(out.window()->end, day(2017, 10, 5));
}

TEST(FilterWindow, CoveringWindowIsIdentity) {
  const EventLog log = example_log();
  const EventLog out = filter_window(log, day(2017, 1, 1), day(2018, 1, 1));
  EXPECT_EQ(out.events_by_id(), log.events_by_id());
}

TEST(FilterWindow, WindowBeforeDataIsEmpty) {
  const EventLog out = filter_window(example_log(), day(2016, 1, 1), day(2016, 2, 1));
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(out.case_count(), 0u);
}

TEST(FilterWindow, RejectsEmptyInterval) {
  EXPECT_THROW(filter_window(example_log(), day(2017, 10, 5), day(2017, 10, 5)), ArgumentError);
  EXPECT_THROW(filter_window(example_log(), day(2017, 10, 6), day(2017, 10, 5)), ArgumentError);
}

TEST(FilterWindow, DfrMatchesOracleOnFilteredLog) {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 100; ++iter) {
    const EventLog log = dfq::testing::random_log(rng);
    const Timestamp lo = static_cast<Timestamp>(rng() % 10);
    const Timestamp hi = lo + 1 + static_cast<Timestamp>(rng() % 30);
    const EventLog out = filter_window(log, lo, hi);
    EventLog expected;
    for (const auto& e : log.events_by_id())
      if (e.timestamp >= lo && e.timestamp <= hi) expected.add_event(e);
    EXPECT_EQ(directly_follows(out), brute_force_dfr(expected));
  }
}

TEST(StableHash, KnownVectors) {
  EXPECT_EQ(stable_hash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(stable_hash("foobar"), 0x85944171f73967e8ULL);
}

TEST(GenRelabel, FactorOneSuffixesZero) {
  const EventLog out = gen_relabel(example_log(), 1);
  for (const auto& e : out.events_by_id()) EXPECT_TRUE(e.activity.ends_with("#0")) << e.activity;
  EXPECT_EQ(out.event_count(), 7u);
}

TEST(GenRelabel, PreservesShape) {
  const EventLog in = example_log();
  const EventLog out = gen_relabel(in, 2);
  EXPECT_EQ(out.event_count(), 7u);
  EXPECT_EQ(out.case_count(), 2u);
  EXPECT_LE(out.distinct_activities(), 10u);
  const auto a = in.events_by_id();
  const auto b = out.events_by_id();
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].timestamp, b[i].timestamp);
    EXPECT_TRUE(b[i].activity.starts_with(a[i].activity + "#"));
  }
  EXPECT_THROW(gen_relabel(in, 0), ArgumentError);
}

TEST(GenMergeCases, FactorOneIsIdentity) {
  const EventLog log = example_log();
  EXPECT_EQ(gen_merge_cases(log, 1).events_by_id(), log.events_by_id());
  EXPECT_THROW(gen_merge_cases(log, 0), ArgumentError);
}

TEST(GenMergeCases, ExampleTwice) {
  const EventLog out = gen_merge_cases(example_log(), 2);
  EXPECT_EQ(out.event_count(), 14u);
  EXPECT_EQ(out.case_count(), 2u);
  EXPECT_EQ(out.distinct_activities(), 5u);
}

// A trace of n events at distinct timestamps copied k times has k(n-1) + (k-1)
// pairs; pairs inside one copy are exactly k times the original.
TEST(GenMergeCases, MassAndJunctions) {
  const EventLog base = synth_base_log(17, 1, 6, 12, true);
  const Dfr base_dfr = brute_force_dfr(base);
  const std::size_t n = base.event_count();
  for (std::uint64_t k : {2u, 3u, 5u}) {
    const EventLog merged = gen_merge_cases(base, k);
    const Dfr merged_dfr = brute_force_dfr(merged);
    EXPECT_EQ(merged_dfr.mass(), k * (n - 1) + (k - 1));
    const auto& events = base.traces().front().events;
    const std::pair<std::string, std::string> junction{events.back().activity, events.front().activity};
    for (const auto& [pair, f] : merged_dfr.counts()) {
      const Frequency expected = k * base_dfr.get(pair.first, pair.second) + (pair == junction ? k - 1 : 0);
      EXPECT_EQ(f, expected) << pair.first << "->" << pair.second;
    }
    EXPECT_EQ(directly_follows(merged), merged_dfr);
  }
}

TEST(SynthBaseLog, Deterministic) {
  const EventLog a = synth_base_log(42, 20, 10, 8);
  const EventLog b = synth_base_log(42, 20, 10, 8);
  EXPECT_EQ(a.events_by_id(), b.events_by_id());
  EXPECT_NE(a.events_by_id(), synth_base_log(43, 20, 10, 8).events_by_id());
}

TEST(SynthBaseLog, ZeroCases) { EXPECT_TRUE(synth_base_log(1, 0, 5, 5).empty()); }

TEST(SynthBaseLog, ShapeAndOracle) {
  const EventLog log = synth_base_log(42, 100, 30, 10);
  EXPECT_EQ(log.case_count(), 100u);
  EXPECT_LE(log.distinct_activities(), 30u);
  for (const auto& t : log.traces())
    for (std::size_t i = 1; i < t.events.size(); ++i) EXPECT_LT(t.events[i - 1].timestamp, t.events[i].timestamp);
  EXPECT_EQ(directly_follows(log), brute_force_dfr(log));
}

TEST(SynthBaseLog, FixedLength) {
  const EventLog log = synth_base_log(1, 3, 30, 100, true);
  for (const auto& t : log.traces()) EXPECT_EQ(t.events.size(), 100u);
  EXPECT_THROW(synth_base_log(1, 1, 0, 5), ArgumentError);
}
