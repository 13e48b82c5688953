#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dfq::bench {

enum class Approach { native, nested, nested_indexed, sorted_stream, traditional };
enum class ScalingAxis { events_via_merge, activities_via_relabel };

std::string to_string(Approach a);
std::string to_string(ScalingAxis a);
// Accepts underscores or hyphens ("nested-indexed"). Throws ArgumentError.
Approach parse_approach(std::string_view name);
ScalingAxis parse_axis(std::string_view name);

struct BenchConfig {
  std::vector<Approach> approaches;
  ScalingAxis axis = ScalingAxis::events_via_merge;
  // Generator factor per point: merge factor on the events axis, relabel
  // factor on the activities axis. Strictly increasing.
  std::vector<std::uint64_t> points;
  std::uint64_t seed = 42;
  std::size_t repetitions = 3;
  bool warmup = true;

  // Base log that every point is derived from.
  std::size_t base_cases = 1;
  std::size_t base_activities = 30;
  std::size_t base_mean_len = 100;
  bool base_fixed_length = true;

  // Where the traditional pipeline writes its export file.
  std::filesystem::path scratch_dir = std::filesystem::temp_directory_path();
};

// Throws ArgumentError when the config breaks its invariants.
void validate(const BenchConfig& cfg);

// Plain-text format, one `key = value` per line, '#' starts a comment:
//
//   approaches = native, sorted_stream, traditional
//   axis = events_via_merge          # or activities_via_relabel
//   points = 1000, 2000, 5000
//   seed = 42
//   repetitions = 3
//   warmup = true
//   base_cases = 1
//   base_activities = 30
//   base_mean_len = 100
//   base_fixed_length = true
//   scratch_dir = /tmp
//
// Only `approaches` and `points` are required.
BenchConfig parse_config(std::istream& in);
BenchConfig load_config(const std::filesystem::path& path);

struct BenchRow {
  Approach approach = Approach::native;
  ScalingAxis axis = ScalingAxis::events_via_merge;
  std::uint64_t size = 0;  // the scale point
  std::size_t events = 0;
  std::size_t activities = 0;
  double abstraction_s = 0;
  std::size_t retrieval_rows = 0;
  double retrieval_s = 0;
  double dfg_s = 0;
  std::optional<double> export_s;      // traditional only
  std::optional<double> conversion_s;  // traditional only
  bool failed = false;
  std::string error;

  // export + conversion + abstraction + retrieval + dfg
  double pipeline_s() const;
};

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  double rms_residual = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  // Abstraction-time slope against events (events axis) or distinct
  // activities (activities axis); absent with fewer than 4 usable points.
  std::map<Approach, SlopeFit> slopes;
};

// Least-squares slope of log(seconds) against log(size). Needs at least 4
// points, all strictly positive. Throws ArgumentError otherwise.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

// Runs every approach at every point, one point at a time. Each phase is
// timed with a monotonic clock; the median over the repetitions is kept.
// Approaches must agree on the relation at every point (throws Error if
// not). A point that runs out of memory is marked failed and the run goes on.
BenchReport run_bench(const BenchConfig& cfg);

// Columns: approach, axis, size, events, activities, abstraction_s,
// retrieval_rows, retrieval_s, dfg_s, export_s, conversion_s. Timing fields
// of a failed point and phases an approach does not have are left empty.
void write_report_csv(const BenchReport& report, std::ostream& out);
void write_summary(const BenchReport& report, std::ostream& out);

}  // namespace dfq::bench
