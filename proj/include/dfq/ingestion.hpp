#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "dfq/event_model.hpp"

namespace dfq {

enum class TimeFormat {
  epoch_micros_integer,
  iso8601_utc,
};

struct CsvConfig {
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::string time_column = "time";
  TimeFormat time_format = TimeFormat::iso8601_utc;
  char delimiter = ',';
  // Without a header row the column names must be 0-based column indices.
  bool has_header = true;
};

// Throws ArgumentError unless the three column names are pairwise distinct.
void validate(const CsvConfig& cfg);

// Parses "YYYY-MM-DD", "YYYY-MM-DDThh:mm[:ss[.ffffff]]" with an optional
// trailing "Z" or "+00:00"; a space may replace the 'T'. Returns nullopt on
// anything else, including out-of-range calendar fields.
std::optional<Timestamp> parse_iso8601(std::string_view text);
// Canonical "YYYY-MM-DDThh:mm:ss[.ffffff]Z".
std::string format_iso8601(Timestamp t);

// Loads one event per data row, event ids in file order. Events are grouped
// by case in order of first appearance; nothing is sorted.
//
// Errors: IoError (unreadable file), SchemaError (missing column),
// RowError (bad timestamp, empty case or activity, short row).
EventLog read_csv(const std::filesystem::path& path, const CsvConfig& cfg);
EventLog read_csv(std::istream& in, const CsvConfig& cfg);

// Writes events in event-id order with a header row (if cfg.has_header).
void write_csv(const EventLog& log, const std::filesystem::path& path, const CsvConfig& cfg);
void write_csv(const EventLog& log, std::ostream& out, const CsvConfig& cfg);

// Looks at the first data row's time field: an integer selects
// epoch_micros_integer, anything else iso8601_utc.
TimeFormat sniff_time_format(const std::filesystem::path& path, const CsvConfig& cfg);

// Keeps events with start <= timestamp <= end; empty traces are dropped and
// the window is recorded on the result. Throws ArgumentError if start >= end.
EventLog filter_window(const EventLog& log, Timestamp start, Timestamp end);

// 64-bit FNV-1a. Used to partition cases for relabeling; stable across
// runs and platforms.
std::uint64_t stable_hash(std::string_view text) noexcept;

// Activity a in case c becomes "a#<stable_hash(c) mod k>". Event count,
// case count and timestamps are unchanged.
EventLog gen_relabel(const EventLog& log, std::uint64_t k);

// Replaces every trace by k back-to-back copies of itself. Copy i is
// shifted by i * (span + 1), span being the whole log's max - min timestamp,
// so copies never overlap in time.
EventLog gen_merge_cases(const EventLog& log, std::uint64_t k);

// Deterministic synthetic log. Activities "a0".."a{n-1}" follow a fixed
// random control flow (each activity has a few successors); trace lengths
// are geometric with the given mean; timestamps strictly increase within a
// case. With fixed_length every trace has exactly mean_len events. The
// generator uses raw mt19937_64 draws only, so output is the same on every
// standard library.
EventLog synth_base_log(std::uint64_t seed, std::size_t n_cases, std::size_t n_activities,
                        std::size_t mean_len, bool fixed_length = false);

}  // namespace dfq
