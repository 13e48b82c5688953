#include "dfq/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>

#include "dfq/baselines.hpp"
#include "dfq/bench.hpp"
#include "dfq/csv.hpp"
#include "dfq/dfg.hpp"
#include "dfq/dfr_core.hpp"
#include "dfq/errors.hpp"
#include "dfq/incremental.hpp"
#include "dfq/ingestion.hpp"
#include "dfq/query.hpp"

namespace dfq::cli {
namespace {

struct CsvOptions {
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::string time_column = "time";
  std::string time_format = "auto";
  char delimiter = ',';
  bool no_header = false;

  void attach(CLI::App& app) {
    app.add_option("--case", case_column, "Case id column")->capture_default_str();
    app.add_option("--activity", activity_column, "Activity column")->capture_default_str();
    app.add_option("--time", time_column, "Timestamp column")->capture_default_str();
    app.add_option("--time-format", time_format, "auto, epoch (integer microseconds) or iso8601")
        ->check(CLI::IsMember({"auto", "epoch", "iso8601"}))
        ->capture_default_str();
    app.add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
    app.add_flag("--no-header", no_header, "Input has no header row; columns are 0-based indices");
  }

  CsvConfig config_for(const std::string& path) const {
    CsvConfig cfg;
    cfg.case_column = case_column;
    cfg.activity_column = activity_column;
    cfg.time_column = time_column;
    cfg.delimiter = delimiter;
    cfg.has_header = !no_header;
    if (time_format == "epoch") {
      cfg.time_format = TimeFormat::epoch_micros_integer;
    } else if (time_format == "iso8601") {
      cfg.time_format = TimeFormat::iso8601_utc;
    } else {
      cfg.time_format = sniff_time_format(path, cfg);
    }
    return cfg;
  }
};

void write_dfr(const Dfr& dfr, std::ostream& out) {
  csv::write_row(out, {"Event_Label_P", "Event_Label_S", "Frequency"});
  for (const auto& r : dfr_to_rows(dfr)) {
    csv::write_row(out, {r.antecedent, r.consequent, std::to_string(r.frequency)});
  }
}

Dfr compute_dfr(const EventLog& log, const std::string& approach) {
  if (approach == "native") return directly_follows(log);
  if (approach == "oracle") return brute_force_dfr(log);
  FlatTable table = FlatTable::from_log(log);
  if (approach == "nested") return nested_join_dfr(table);
  if (approach == "nested-indexed") {
    table.build_index();
    return nested_join_dfr_indexed(table);
  }
  return sorted_stream_dfr(table).dfr;
}

int cmd_ingest(const std::string& path, const CsvOptions& opts, bool incremental, std::ostream& out) {
  const EventLog log = read_csv(path, opts.config_for(path));
  out << "events: " << log.event_count() << "\n";
  out << "cases: " << log.case_count() << "\n";
  out << "activities: " << log.distinct_activities() << "\n";
  const Dfr batch = directly_follows(log);
  out << "dfr pairs: " << batch.size() << "\n";
  if (incremental) {
    DfrMaintainer m;
    for (const auto& e : log.events_by_id()) m.insert_event(e);
    if (!(m.snapshot() == batch)) throw Error("incremental snapshot differs from batch result");
    out << "incremental: ok (" << m.event_count() << " inserts, snapshot matches batch)\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Event-log query engine with a native directly-follows operator", "dfq"};
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);

  CsvOptions csv_opts;

  std::string ingest_path;
  bool incremental = false;
  auto* ingest = app.add_subcommand("ingest", "Load a CSV event log and report counts");
  ingest->add_option("csv", ingest_path, "Event log CSV")->required();
  ingest->add_flag("--incremental", incremental,
                   "Replay events through the incremental maintainer and check it against batch");
  csv_opts.attach(*ingest);

  std::uint64_t seed = 42;
  std::size_t n_cases = 100, n_activities = 30, mean_len = 10;
  bool fixed_length = false;
  std::uint64_t merge_k = 0, relabel_k = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic event log");
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--cases", n_cases, "Number of cases")->capture_default_str();
  gen->add_option("--activities", n_activities, "Number of activities")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--mean-len", mean_len, "Mean trace length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_flag("--fixed-length", fixed_length, "Every trace has exactly --mean-len events");
  auto* merge_opt = gen->add_option("--merge", merge_k, "Concatenate k time-shifted copies of each case")
                        ->check(CLI::PositiveNumber);
  auto* relabel_opt = gen->add_option("--relabel", relabel_k, "Split activities into k labels by case")
                          ->check(CLI::PositiveNumber);
  merge_opt->excludes(relabel_opt);
  gen->add_option("--out", gen_out, "Output CSV ('-' for standard output)")->required();

  std::string dfr_path, approach = "native";
  auto* dfr = app.add_subcommand("dfr", "Print the directly-follows relation as CSV");
  dfr->add_option("csv", dfr_path, "Event log CSV")->required();
  dfr->add_option("--approach", approach, "Computation route")
      ->check(CLI::IsMember({"native", "nested", "nested-indexed", "sorted-stream", "oracle"}))
      ->capture_default_str();
  csv_opts.attach(*dfr);

  std::string dfg_path, dfg_out;
  auto* dfg = app.add_subcommand("dfg", "Write the directly-follows graph as DOT or JSON");
  dfg->add_option("csv", dfg_path, "Event log CSV")->required();
  dfg->add_option("--out", dfg_out, "Output file; .dot or .json")->required();
  csv_opts.attach(*dfg);

  std::string sql, format = "csv";
  std::vector<std::string> tables;
  auto* query = app.add_subcommand("query", "Run a query over CSV-backed tables");
  query->add_option("-e,--execute", sql, "Query text (read from standard input if omitted)");
  query->add_option("--table", tables, "Register a table as name=path.csv")->take_all();
  query->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "table"}))
      ->capture_default_str();
  csv_opts.attach(*query);

  std::string bench_config, bench_out;
  auto* bench = app.add_subcommand("bench", "Run the benchmark harness");
  bench->add_option("--config", bench_config, "Benchmark config file")->required();
  bench->add_option("--out", bench_out, "Report CSV path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_path, csv_opts, incremental, out);

    if (*gen) {
      EventLog log = synth_base_log(seed, n_cases, n_activities, mean_len, fixed_length);
      if (merge_k) log = gen_merge_cases(log, merge_k);
      if (relabel_k) log = gen_relabel(log, relabel_k);
      CsvConfig cfg;
      cfg.time_format = TimeFormat::epoch_micros_integer;
      if (gen_out == "-") {
        write_csv(log, out, cfg);
      } else {
        write_csv(log, gen_out, cfg);
        err << "wrote " << log.event_count() << " events in " << log.case_count() << " cases to "
            << gen_out << "\n";
      }
      return kExitOk;
    }

    if (*dfr) {
      const EventLog log = read_csv(dfr_path, csv_opts.config_for(dfr_path));
      write_dfr(compute_dfr(log, approach), out);
      return kExitOk;
    }

    if (*dfg) {
      const std::filesystem::path target(dfg_out);
      const auto ext = target.extension().string();
      if (ext != ".dot" && ext != ".json") {
        err << "dfg: --out must end in .dot or .json\n" << dfg->help();
        return kExitUsage;
      }
      const EventLog log = read_csv(dfg_path, csv_opts.config_for(dfg_path));
      const Dfg g = build_dfg(log);
      std::ofstream file(target, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError(target.string(), "cannot open file for writing");
      file << (ext == ".dot" ? to_dot(g) : to_json(g));
      if (!file) throw IoError(target.string(), "write failed");
      return kExitOk;
    }

    if (*query) {
      query::Catalog catalog;
      for (const auto& spec : tables) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
          err << "query: --table expects name=path.csv, got '" << spec << "'\n" << query->help();
          return kExitUsage;
        }
        const std::string name = spec.substr(0, eq);
        const std::string path = spec.substr(eq + 1);
        const CsvConfig cfg = csv_opts.config_for(path);
        query::TableSchema schema{cfg.case_column, cfg.activity_column, cfg.time_column};
        catalog.register_table(name, std::make_shared<const EventLog>(read_csv(path, cfg)), schema);
      }
      if (sql.empty()) sql.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      const auto result = query::execute(query::parse(sql), catalog);
      if (format == "table") {
        query::write_text_table(result, out);
      } else {
        query::write_csv(result, out);
      }
      return kExitOk;
    }

    if (*bench) {
      const auto cfg = bench::load_config(bench_config);
      const auto report = bench::run_bench(cfg);
      std::ofstream file(bench_out, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError(bench_out, "cannot open file for writing");
      bench::write_report_csv(report, file);
      bench::write_summary(report, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace dfq::cli
