#include "dfq/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <new>
#include <sstream>
#include <unistd.h>

#include "dfq/baselines.hpp"
#include "dfq/csv.hpp"
#include "dfq/dfg.hpp"
#include "dfq/dfr_core.hpp"
#include "dfq/errors.hpp"
#include "dfq/ingestion.hpp"

namespace dfq::bench {
namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double timed(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    if (auto item = trim(s.substr(start, end - start)); !item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_unsigned(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-') {
    throw ArgumentError("config line " + std::to_string(line) + ": '" + text + "' is not a non-negative integer");
  }
  return v;
}

bool parse_bool(const std::string& text, std::size_t line) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ArgumentError("config line " + std::to_string(line) + ": '" + text + "' is not a boolean");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Sample {
  Dfr dfr;
  double abstraction_s = 0;
  std::size_t retrieval_rows = 0;
  double retrieval_s = 0;
  double dfg_s = 0;
  std::optional<double> export_s;
  std::optional<double> conversion_s;
};

// The relation leaves the store as CSV text; that is what retrieval times.
std::size_t ship_rows(const Dfr& dfr, double& seconds) {
  std::size_t rows = 0;
  seconds = timed([&] {
    std::ostringstream out;
    for (const auto& r : dfr_to_rows(dfr)) {
      csv::write_row(out, {r.antecedent, r.consequent, std::to_string(r.frequency)});
      ++rows;
    }
  });
  return rows;
}

std::filesystem::path scratch_file(const BenchConfig& cfg) {
  return cfg.scratch_dir / ("dfq-bench-" + std::to_string(::getpid()) + ".csv");
}

// Per-point inputs shared by the approaches. Tables are prepared outside the
// timed region, as a database would already hold them.
struct PointData {
  EventLog log;
  std::optional<FlatTable> table;
  std::optional<FlatTable> indexed;
};

Sample run_once(Approach a, PointData& data, const BenchConfig& cfg) {
  Sample s;
  switch (a) {
    case Approach::native:
      s.abstraction_s = timed([&] { s.dfr = directly_follows(data.log); });
      s.retrieval_rows = ship_rows(s.dfr, s.retrieval_s);
      s.dfg_s = timed([&] { (void)build_dfg(data.log, s.dfr); });
      break;
    case Approach::nested:
      if (!data.table) data.table = FlatTable::from_log(data.log);
      s.abstraction_s = timed([&] { s.dfr = nested_join_dfr(*data.table); });
      s.retrieval_rows = ship_rows(s.dfr, s.retrieval_s);
      s.dfg_s = timed([&] { (void)build_dfg(data.log, s.dfr); });
      break;
    case Approach::nested_indexed:
      if (!data.indexed) {
        data.indexed = FlatTable::from_log(data.log);
        data.indexed->build_index();
      }
      s.abstraction_s = timed([&] { s.dfr = nested_join_dfr_indexed(*data.indexed); });
      s.retrieval_rows = ship_rows(s.dfr, s.retrieval_s);
      s.dfg_s = timed([&] { (void)build_dfg(data.log, s.dfr); });
      break;
    case Approach::sorted_stream: {
      if (!data.table) data.table = FlatTable::from_log(data.log);
      StreamResult r;
      s.abstraction_s = timed([&] { r = sorted_stream_dfr(*data.table); });
      s.dfr = std::move(r.dfr);
      s.retrieval_rows = r.transferred_rows;
      s.retrieval_s = r.stream_seconds;
      s.dfg_s = timed([&] { (void)build_dfg(data.log, s.dfr); });
      break;
    }
    case Approach::traditional: {
      const auto path = scratch_file(cfg);
      CsvConfig csv_cfg;
      csv_cfg.time_format = TimeFormat::epoch_micros_integer;
      EventLog loaded;
      s.export_s = timed([&] { write_csv(data.log, path, csv_cfg); });
      s.conversion_s = timed([&] { loaded = read_csv(path, csv_cfg); });
      std::error_code ec;
      std::filesystem::remove(path, ec);
      s.abstraction_s = timed([&] { s.dfr = directly_follows(loaded); });
      // Every event left the store through the export file.
      s.retrieval_rows = loaded.event_count();
      s.dfg_s = timed([&] { (void)build_dfg(loaded, s.dfr); });
      break;
    }
  }
  return s;
}

BenchRow measure(Approach a, PointData& data, const BenchConfig& cfg, Dfr& dfr_out) {
  BenchRow row;
  if (cfg.warmup) (void)run_once(a, data, cfg);
  std::vector<Sample> samples;
  for (std::size_t r = 0; r < cfg.repetitions; ++r) samples.push_back(run_once(a, data, cfg));

  auto column = [&](auto field) {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(field(s));
    return median(std::move(v));
  };
  row.abstraction_s = column([](const Sample& s) { return s.abstraction_s; });
  row.retrieval_s = column([](const Sample& s) { return s.retrieval_s; });
  row.dfg_s = column([](const Sample& s) { return s.dfg_s; });
  if (samples.front().export_s) {
    row.export_s = column([](const Sample& s) { return *s.export_s; });
    row.conversion_s = column([](const Sample& s) { return *s.conversion_s; });
  }
  row.retrieval_rows = samples.back().retrieval_rows;
  dfr_out = std::move(samples.back().dfr);
  return row;
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out << std::setprecision(9) << s;
  return out.str();
}

}  // namespace

std::string to_string(Approach a) {
  switch (a) {
    case Approach::native: return "native";
    case Approach::nested: return "nested";
    case Approach::nested_indexed: return "nested_indexed";
    case Approach::sorted_stream: return "sorted_stream";
    case Approach::traditional: return "traditional";
  }
  return "?";
}

std::string to_string(ScalingAxis a) {
  return a == ScalingAxis::events_via_merge ? "events_via_merge" : "activities_via_relabel";
}

Approach parse_approach(std::string_view name) {
  std::string n(name);
  std::replace(n.begin(), n.end(), '-', '_');
  for (Approach a : {Approach::native, Approach::nested, Approach::nested_indexed,
                     Approach::sorted_stream, Approach::traditional}) {
    if (to_string(a) == n) return a;
  }
  throw ArgumentError("unknown approach '" + std::string(name) + "'");
}

ScalingAxis parse_axis(std::string_view name) {
  std::string n(name);
  std::replace(n.begin(), n.end(), '-', '_');
  if (n == "events_via_merge" || n == "events") return ScalingAxis::events_via_merge;
  if (n == "activities_via_relabel" || n == "activities") return ScalingAxis::activities_via_relabel;
  throw ArgumentError("unknown scaling axis '" + std::string(name) + "'");
}

void validate(const BenchConfig& cfg) {
  if (cfg.approaches.empty()) throw ArgumentError("no approaches configured");
  if (cfg.points.empty()) throw ArgumentError("no scale points configured");
  if (cfg.points.front() == 0) throw ArgumentError("scale points must be positive");
  for (std::size_t i = 1; i < cfg.points.size(); ++i) {
    if (cfg.points[i] <= cfg.points[i - 1]) throw ArgumentError("scale points must be strictly increasing");
  }
  if (cfg.repetitions == 0) throw ArgumentError("repetitions must be at least 1");
  if (cfg.base_activities == 0 || cfg.base_mean_len == 0) {
    throw ArgumentError("base log needs at least one activity and a positive length");
  }
}

BenchConfig parse_config(std::istream& in) {
  BenchConfig cfg;
  bool have_approaches = false, have_points = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "approaches") {
      cfg.approaches.clear();
      for (const auto& item : split_list(value)) cfg.approaches.push_back(parse_approach(item));
      have_approaches = true;
    } else if (key == "axis") {
      cfg.axis = parse_axis(value);
    } else if (key == "points") {
      cfg.points.clear();
      for (const auto& item : split_list(value)) cfg.points.push_back(parse_unsigned(item, line_no));
      have_points = true;
    } else if (key == "seed") {
      cfg.seed = parse_unsigned(value, line_no);
    } else if (key == "repetitions") {
      cfg.repetitions = parse_unsigned(value, line_no);
    } else if (key == "warmup") {
      cfg.warmup = parse_bool(value, line_no);
    } else if (key == "base_cases") {
      cfg.base_cases = parse_unsigned(value, line_no);
    } else if (key == "base_activities") {
      cfg.base_activities = parse_unsigned(value, line_no);
    } else if (key == "base_mean_len") {
      cfg.base_mean_len = parse_unsigned(value, line_no);
    } else if (key == "base_fixed_length") {
      cfg.base_fixed_length = parse_bool(value, line_no);
    } else if (key == "scratch_dir") {
      cfg.scratch_dir = value;
    } else {
      throw ArgumentError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!have_approaches) throw ArgumentError("config is missing 'approaches'");
  if (!have_points) throw ArgumentError("config is missing 'points'");
  validate(cfg);
  return cfg;
}

BenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open file");
  return parse_config(in);
}

double BenchRow::pipeline_s() const {
  return export_s.value_or(0) + conversion_s.value_or(0) + abstraction_s + retrieval_s + dfg_s;
}

SlopeFit fit_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4) throw ArgumentError("slope fit needs at least 4 points");
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [size, secs] : points) {
    if (!(size > 0) || !(secs > 0)) throw ArgumentError("slope fit needs strictly positive sizes and times");
    const double x = std::log(size), y = std::log(secs);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0) throw ArgumentError("slope fit needs at least two distinct sizes");
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double mean_y = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (const auto& [size, secs] : points) {
    const double y = std::log(secs);
    const double r = y - (fit.intercept + fit.slope * std::log(size));
    ss_res += r * r;
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.rms_residual = std::sqrt(ss_res / n);
  return fit;
}

BenchReport run_bench(const BenchConfig& cfg) {
  validate(cfg);
  BenchReport report;
  const EventLog base = synth_base_log(cfg.seed, cfg.base_cases, cfg.base_activities,
                                       cfg.base_mean_len, cfg.base_fixed_length);

  for (const std::uint64_t point : cfg.points) {
    std::optional<PointData> data;
    std::string gen_error;
    try {
      data.emplace();
      data->log = cfg.axis == ScalingAxis::events_via_merge ? gen_merge_cases(base, point)
                                                           : gen_relabel(base, point);
    } catch (const std::bad_alloc&) {
      data.reset();
      gen_error = "out of memory while generating the log";
    }
    const std::size_t events = data ? data->log.event_count() : 0;
    const std::size_t activities = data ? data->log.distinct_activities() : 0;

    std::optional<Dfr> reference;
    Approach reference_approach = Approach::native;
    for (const Approach a : cfg.approaches) {
      BenchRow row;
      Dfr dfr;
      if (data) {
        try {
          row = measure(a, *data, cfg, dfr);
        } catch (const std::bad_alloc&) {
          row = BenchRow{};
          row.failed = true;
          row.error = "out of memory";
        }
      } else {
        row.failed = true;
        row.error = gen_error;
      }
      row.approach = a;
      row.axis = cfg.axis;
      row.size = point;
      row.events = events;
      row.activities = activities;
      if (!row.failed) {
        if (!reference) {
          reference = std::move(dfr);
          reference_approach = a;
        } else if (!(dfr == *reference)) {
          throw Error("approach " + to_string(a) + " disagrees with " + to_string(reference_approach) +
                      " at scale point " + std::to_string(point));
        }
      }
      report.rows.push_back(std::move(row));
    }
  }

  for (const Approach a : cfg.approaches) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : report.rows) {
      if (r.approach != a || r.failed || r.abstraction_s <= 0) continue;
      const double x = static_cast<double>(
          cfg.axis == ScalingAxis::events_via_merge ? r.events : r.activities);
      if (x > 0) pts.emplace_back(x, r.abstraction_s);
    }
    if (pts.size() >= 4) {
      try {
        report.slopes[a] = fit_slope(pts);
      } catch (const ArgumentError&) {
        // identical sizes at every point; no trend to report
      }
    }
  }
  return report;
}

void write_report_csv(const BenchReport& report, std::ostream& out) {
  csv::write_row(out, {"approach", "axis", "size", "events", "activities", "abstraction_s",
                       "retrieval_rows", "retrieval_s", "dfg_s", "export_s", "conversion_s"});
  for (const auto& r : report.rows) {
    auto t = [&](double v) { return r.failed ? std::string{} : fmt_seconds(v); };
    auto opt = [&](const std::optional<double>& v) {
      return r.failed || !v ? std::string{} : fmt_seconds(*v);
    };
    csv::write_row(out, {to_string(r.approach), to_string(r.axis), std::to_string(r.size),
                         std::to_string(r.events), std::to_string(r.activities), t(r.abstraction_s),
                         r.failed ? std::string{} : std::to_string(r.retrieval_rows),
                         t(r.retrieval_s), t(r.dfg_s), opt(r.export_s), opt(r.conversion_s)});
  }
}

void write_summary(const BenchReport& report, std::ostream& out) {
  for (const auto& r : report.rows) {
    out << std::left << std::setw(15) << to_string(r.approach) << " size=" << std::setw(8) << r.size
        << " events=" << std::setw(9) << r.events;
    if (r.failed) {
      out << " FAILED (" << r.error << ")\n";
      continue;
    }
    out << " abstraction=" << fmt_seconds(r.abstraction_s) << "s rows=" << r.retrieval_rows;
    if (r.export_s) {
      const double overhead = *r.export_s + *r.conversion_s;
      out << " export+conversion=" << fmt_seconds(overhead) << "s ("
          << std::setprecision(3) << 100.0 * overhead / r.pipeline_s() << "% of pipeline)";
    }
    out << '\n';
  }
  for (const auto& [a, fit] : report.slopes) {
    out << "slope " << to_string(a) << ": " << std::setprecision(4) << fit.slope
        << " (r^2=" << fit.r_squared << ")\n";
  }
}

}  // namespace dfq::bench
