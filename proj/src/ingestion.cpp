#include "dfq/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "dfq/csv.hpp"
#include "dfq/errors.hpp"

namespace dfq {
namespace {

constexpr std::int64_t kMicrosPerSecond = 1'000'000;

bool parse_int(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

// Fixed-width unsigned decimal field.
bool digits(std::string_view text, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > text.size()) return false;
  out = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
    out = out * 10 + (text[i] - '0');
  }
  return true;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         bool has_header) {
  if (has_header) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError(name, "missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
  std::int64_t idx = 0;
  if (!parse_int(name, idx) || idx < 0) {
    throw SchemaError(name, "column '" + name +
                                "' must be a 0-based index when the file has no header row");
  }
  return static_cast<std::size_t>(idx);
}

std::string time_to_text(Timestamp t, TimeFormat fmt) {
  return fmt == TimeFormat::epoch_micros_integer ? std::to_string(t) : format_iso8601(t);
}

}  // namespace

void validate(const CsvConfig& cfg) {
  if (cfg.case_column == cfg.activity_column || cfg.case_column == cfg.time_column ||
      cfg.activity_column == cfg.time_column) {
    throw ArgumentError("case, activity and time columns must be distinct");
  }
}

std::optional<Timestamp> parse_iso8601(std::string_view s) {
  using namespace std::chrono;
  int y = 0, mo = 0, d = 0;
  if (!digits(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !digits(s, 5, 2, mo) ||
      s[7] != '-' || !digits(s, 8, 2, d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  std::int64_t micros =
      duration_cast<microseconds>(sys_days{ymd}.time_since_epoch()).count();

  std::size_t pos = 10;
  if (pos == s.size()) return micros;
  if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
  ++pos;
  int hh = 0, mm = 0, ss = 0;
  if (!digits(s, pos, 2, hh) || pos + 2 >= s.size() || s[pos + 2] != ':' ||
      !digits(s, pos + 3, 2, mm)) {
    return std::nullopt;
  }
  pos += 5;
  if (pos < s.size() && s[pos] == ':') {
    if (!digits(s, pos + 1, 2, ss)) return std::nullopt;
    pos += 3;
  }
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  std::int64_t frac = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    int n = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      if (n < 6) frac = frac * 10 + (s[pos] - '0');
      ++n;
      ++pos;
    }
    if (n == 0) return std::nullopt;
    for (int i = n; i < 6; ++i) frac *= 10;
  }
  const std::string_view zone = s.substr(pos);
  if (!(zone.empty() || zone == "Z" || zone == "+00:00")) return std::nullopt;
  micros += ((hh * 60 + mm) * 60 + ss) * kMicrosPerSecond + frac;
  return micros;
}

std::string format_iso8601(Timestamp t) {
  using namespace std::chrono;
  const sys_time<microseconds> tp{microseconds{t}};
  const auto day_point = floor<days>(tp);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{tp - day_point};
  char buf[64];
  const auto frac = hms.subseconds().count();
  int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                        static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                        static_cast<int>(hms.hours().count()),
                        static_cast<int>(hms.minutes().count()),
                        static_cast<int>(hms.seconds().count()));
  std::string out(buf, static_cast<std::size_t>(n));
  if (frac != 0) {
    std::snprintf(buf, sizeof buf, ".%06lld", static_cast<long long>(frac));
    out += buf;
  }
  out += 'Z';
  return out;
}

EventLog read_csv(std::istream& in, const CsvConfig& cfg) {
  validate(cfg);
  csv::Reader reader(in, cfg.delimiter);
  std::vector<std::string> header;
  if (cfg.has_header) {
    auto rec = reader.next();
    if (!rec) throw SchemaError(cfg.case_column, "missing header row");
    header = std::move(rec->fields);
    if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
  }
  const std::size_t case_idx = column_index(header, cfg.case_column, cfg.has_header);
  const std::size_t act_idx = column_index(header, cfg.activity_column, cfg.has_header);
  const std::size_t time_idx = column_index(header, cfg.time_column, cfg.has_header);
  const std::size_t needed = std::max({case_idx, act_idx, time_idx}) + 1;

  EventLog log;
  while (auto rec = reader.next()) {
    auto& f = rec->fields;
    if (f.size() == 1 && f[0].empty()) continue;  // blank line
    if (f.size() < needed) {
      throw RowError(rec->line, "expected at least " + std::to_string(needed) + " fields, got " +
                                    std::to_string(f.size()));
    }
    if (f[case_idx].empty()) throw RowError(rec->line, "empty case id");
    if (f[act_idx].empty()) throw RowError(rec->line, "empty activity");
    const std::string& time_text = f[time_idx];
    std::optional<Timestamp> ts;
    if (cfg.time_format == TimeFormat::epoch_micros_integer) {
      std::int64_t v = 0;
      if (parse_int(time_text, v)) ts = v;
    } else {
      ts = parse_iso8601(time_text);
    }
    if (!ts) throw RowError(rec->line, "cannot parse timestamp '" + time_text + "'");
    log.append(std::move(f[case_idx]), std::move(f[act_idx]), *ts);
  }
  return log;
}

EventLog read_csv(const std::filesystem::path& path, const CsvConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open file");
  return read_csv(in, cfg);
}

void write_csv(const EventLog& log, std::ostream& out, const CsvConfig& cfg) {
  validate(cfg);
  if (cfg.has_header) {
    csv::write_row(out, {cfg.case_column, cfg.activity_column, cfg.time_column}, cfg.delimiter);
  }
  for (const auto& e : log.events_by_id()) {
    out << csv::escape(e.case_id, cfg.delimiter) << cfg.delimiter
        << csv::escape(e.activity, cfg.delimiter) << cfg.delimiter
        << time_to_text(e.timestamp, cfg.time_format) << '\n';
  }
}

void write_csv(const EventLog& log, const std::filesystem::path& path, const CsvConfig& cfg) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open file for writing");
  write_csv(log, out, cfg);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

TimeFormat sniff_time_format(const std::filesystem::path& path, const CsvConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open file");
  csv::Reader reader(in, cfg.delimiter);
  std::vector<std::string> header;
  if (cfg.has_header) {
    auto rec = reader.next();
    if (!rec) return TimeFormat::iso8601_utc;
    header = std::move(rec->fields);
  }
  const std::size_t time_idx = column_index(header, cfg.time_column, cfg.has_header);
  while (auto rec = reader.next()) {
    if (rec->fields.size() == 1 && rec->fields[0].empty()) continue;
    if (rec->fields.size() <= time_idx) break;
    std::int64_t v = 0;
    return parse_int(rec->fields[time_idx], v) ? TimeFormat::epoch_micros_integer
                                               : TimeFormat::iso8601_utc;
  }
  return TimeFormat::iso8601_utc;
}

EventLog filter_window(const EventLog& log, Timestamp start, Timestamp end) {
  if (start >= end) throw ArgumentError("window start must precede window end");
  EventLog out;
  out.set_window(TimeWindow{start, end});
  for (const auto& e : log.events_by_id()) {
    if (start <= e.timestamp && e.timestamp <= end) out.add_event(e);
  }
  return out;
}

std::uint64_t stable_hash(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

EventLog gen_relabel(const EventLog& log, std::uint64_t k) {
  if (k == 0) throw ArgumentError("relabel factor must be at least 1");
  EventLog out;
  for (const auto& t : log.traces()) {
    const std::string suffix = "#" + std::to_string(stable_hash(t.case_id) % k);
    for (const auto& e : t.events) {
      Event copy = e;
      copy.activity += suffix;
      out.add_event(std::move(copy));
    }
  }
  if (log.window()) out.set_window(*log.window());
  return out;
}

EventLog gen_merge_cases(const EventLog& log, std::uint64_t k) {
  if (k == 0) throw ArgumentError("merge factor must be at least 1");
  if (k == 1) return log;
  const auto range = log.time_range();
  if (!range) return EventLog{};
  const Timestamp shift = range->second - range->first + 1;

  EventId max_id = 0;
  for (const auto& t : log.traces())
    for (const auto& e : t.events) max_id = std::max(max_id, e.event_id);

  EventLog out;
  for (const auto& t : log.traces()) {
    for (std::uint64_t copy = 0; copy < k; ++copy) {
      for (const auto& e : t.events) {
        out.add_event(Event{e.event_id + copy * max_id, e.case_id, e.activity,
                            e.timestamp + static_cast<Timestamp>(copy) * shift});
      }
    }
  }
  return out;
}

EventLog synth_base_log(std::uint64_t seed, std::size_t n_cases, std::size_t n_activities,
                        std::size_t mean_len, bool fixed_length) {
  if (n_activities == 0) throw ArgumentError("n_activities must be at least 1");
  if (mean_len == 0) throw ArgumentError("mean_len must be at least 1");
  std::mt19937_64 rng(seed);
  auto below = [&rng](std::uint64_t n) { return rng() % n; };

  constexpr std::size_t kSuccessors = 3;
  std::vector<std::vector<std::size_t>> successors(n_activities);
  for (auto& s : successors)
    for (std::size_t i = 0; i < kSuccessors; ++i) s.push_back(below(n_activities));

  // 2017-01-01T00:00:00Z
  constexpr Timestamp kOrigin = 1'483'228'800LL * kMicrosPerSecond;
  constexpr Timestamp kHour = 3600LL * kMicrosPerSecond;
  const std::size_t max_len = 50 * mean_len;

  EventLog log;
  for (std::size_t c = 0; c < n_cases; ++c) {
    std::size_t len = fixed_length ? mean_len : 1;
    while (!fixed_length && len < max_len && below(mean_len) != 0) ++len;
    const std::string case_id = "c" + std::to_string(c + 1);
    Timestamp t = kOrigin + static_cast<Timestamp>(c) * kHour + static_cast<Timestamp>(below(kHour));
    std::size_t act = below(std::min<std::size_t>(n_activities, kSuccessors));
    for (std::size_t i = 0; i < len; ++i) {
      log.append(case_id, "a" + std::to_string(act), t);
      t += 1 + static_cast<Timestamp>(below(kHour));
      act = successors[act][below(kSuccessors)];
    }
  }
  return log;
}

}  // namespace dfq
