// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "stbench/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <thread>
#include <utility>
#include <vector>

#include "stbench/core.hpp"
#include "stbench/datagen.hpp"
#include "stbench/error.hpp"
#include "stbench/loadgen.hpp"
#include "stbench/query.hpp"
#include "stbench/suite_config.hpp"
#include "stbench/sut.hpp"

namespace stbench {

namespace {

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t secs = std::chrono::system_clock::to_time_t(now);
  const int ms = static_cast<int>(
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() %
      1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, ms);
  return buf;
}

std::ostream& stamp(std::ostream& out) { return out << timestamp_now() << ' '; }

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
      dynamic_cast<const ValidationError*>(&e) != nullptr ||
      dynamic_cast<const ParseError*>(&e) != nullptr ||
      dynamic_cast<const UnsupportedError*>(&e) != nullptr)
    return 1;
  return 2;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

void refuse_existing(const std::string& path, bool force) {
  if (!force && std::filesystem::exists(path))
    throw ConfigError(path + " already exists; pass --force to overwrite it");
}

template <typename T>
const T& need_section(const std::optional<T>& section, const char* name) {
  if (!section)
    throw ConfigError(std::string("config is missing the `") + name +
                      "` section required by this command");
  return *section;
}

Dataset generate_stage(const DataGenConfig& data, const std::string& out_path,
                       std::ostream& out) {
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  Dataset dataset = generate_dataset(data, threads);
  const DatasetSummary summary = summarize(dataset);
  const std::size_t bytes = export_dataset_file(dataset, out_path);
  stamp(out) << "dataset " << out_path << ": objects=" << summary.object_count
             << " points=" << summary.total_points
             << " mean_length=" << format_double(summary.mean_trajectory_length) << " extent=["
             << format_point(summary.extent.min) << " .. " << format_point(summary.extent.max)
             << "] time_span=[" << summary.time_span.start << " .. " << summary.time_span.end
             << "] bytes=" << bytes << '\n';
  return dataset;
}

RunLog run_stage(const SuiteConfig& cfg, const std::string& dataset_path, std::ostream& out) {
  const QueriesConfig& queries = need_section(cfg.queries, "queries");
  const SutConfig& sut = need_section(cfg.sut, "sut");
  const WorkloadConfig& workload = need_section(cfg.workload, "workload");

  stamp(out) << "Pre-Experiment: importing dataset " << dataset_path << '\n';
  const Dataset dataset = import_dataset_file(dataset_path);
  const DatasetSummary summary = summarize(dataset);
  stamp(out) << "Pre-Experiment: dataset has " << summary.object_count << " objects, "
             << summary.total_points << " points\n";

  std::unique_ptr<SutAdapter> adapter =
      adapter_for(sut.adapter, sut.options, make_default_adapter_registry());
  if (queries.dialect != adapter->dialect())
    throw ConfigError("adapter " + adapter->name() + " accepts dialect " + adapter->dialect() +
                      ", not queries.dialect " + queries.dialect);

  stamp(out) << "Pre-Experiment: loading adapter " << adapter->name() << " (index "
             << to_string(sut.index.kind) << ")\n";
  adapter->prepare();
  adapter->bulk_load(dataset);
  adapter->build_index(sut.index);

  stamp(out) << "Pre-Experiment: instantiating " << queries.count << " queries (seed "
             << queries.seed << ", dialect " << queries.dialect << ")\n";
  std::vector<QueryInstance> instances =
      instantiate(queries.templates, dataset, queries.seed, queries.count);

  const DialectRegistry registry =
      make_default_registry(GenericSqlOptions{knn_time_tolerance_ms(dataset)});
  std::vector<QueryText> texts;
  texts.reserve(instances.size());
  for (const QueryInstance& instance : instances)
    texts.push_back(registry.translate(instance, queries.dialect));

  const WorkloadPlan plan = plan_workload(std::move(instances), workload);
  stamp(out) << "Pre-Experiment: planned " << plan.tasks.size() << " tasks over "
             << workload.workers << " workers (" << plan.warmup_task_count << " warmup)\n";

  stamp(out) << "In-Experiment: running in " << to_string(workload.mode) << " mode\n";
  RunOptions options;
  options.texts = &texts;
  RunLog log = run(plan, *adapter, workload, options);
  adapter->teardown();

  std::uint64_t errors = 0;
  for (const OpRecord& record : log.records)
    if (!outcome_is_ok(record.outcome)) ++errors;
  stamp(out) << "In-Experiment: " << log.records.size() << " ops completed, " << errors
             << " errors\n";
  return log;
}

std::vector<RunLog> read_runlogs(const std::vector<std::string>& paths) {
  std::vector<RunLog> logs;
  logs.reserve(paths.size());
  for (const std::string& path : paths) {
    try {
      logs.push_back(read_runlog_file(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  return logs;
}

}  // namespace

int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const nlohmann::json doc = load_json_file(config_path);
    const std::vector<Diagnostic> diags = lint_suite_config(doc);
    for (const Diagnostic& d : diags) {
      out << to_string(d.severity) << ": ";
      if (!d.where.empty()) out << d.where << ": ";
      out << d.message << '\n';
    }
    if (has_errors(diags)) return 1;
    out << config_path << ": OK\n";
    return 0;
  });
}

int cmd_generate(const std::string& config_path, const std::string& out_path, bool force,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const SuiteConfig cfg = load_suite_config_file(config_path);
    const DataGenConfig& data = need_section(cfg.data, "data");
    refuse_existing(out_path, force);
    generate_stage(data, out_path, out);
    return 0;
  });
}

int cmd_run(const std::string& config_path, const std::string& dataset_path,
            const std::string& out_path, bool force, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const SuiteConfig cfg = load_suite_config_file(config_path);
    need_section(cfg.queries, "queries");
    need_section(cfg.sut, "sut");
    need_section(cfg.workload, "workload");
    refuse_existing(out_path, force);
    const RunLog log = run_stage(cfg, dataset_path, out);
    const std::size_t bytes = write_runlog_file(log, out_path);
    stamp(out) << "Post-Experiment: run log " << log.run_id << " written to " << out_path
               << " (" << bytes << " bytes)\n";
    return 0;
  });
}

int cmd_analyze(const std::string& config_path, const std::vector<std::string>& runlog_paths,
                const std::string& out_path, ExportFormat format, bool force,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const SuiteConfig cfg = load_suite_config_file(config_path);
    const AnalysisConfig& analysis = need_section(cfg.analysis, "analysis");
    if (runlog_paths.empty()) throw ConfigError("at least one run log path is required");
    refuse_existing(out_path, force);
    const std::vector<RunLog> logs = read_runlogs(runlog_paths);
    if (logs.size() == 1) {
      const Report report = compute_report(logs.front(), analysis);
      export_report_file(report, format, out_path);
      stamp(out) << "Post-Experiment: report for run " << report.run_id << " ("
                 << report.groups.size() << " groups, " << report.op_count
                 << " ops) written to " << out_path << '\n';
    } else {
      std::vector<Report> reports;
      reports.reserve(logs.size());
      for (const RunLog& log : logs) reports.push_back(compute_report(log, analysis));
      const Comparison comparison = compare(reports);
      export_comparison_file(comparison, format, out_path);
      stamp(out) << "Post-Experiment: comparison of " << reports.size()
                 << " runs (baseline " << comparison.run_ids.front() << ") written to "
                 << out_path << '\n';
    }
    return 0;
  });
}

int cmd_all(const std::string& config_path, const std::string& workdir, bool force,
            std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const SuiteConfig cfg = load_suite_config_file(config_path);
    const DataGenConfig& data = need_section(cfg.data, "data");
    need_section(cfg.queries, "queries");
    need_section(cfg.sut, "sut");
    need_section(cfg.workload, "workload");

    const std::filesystem::path dir = workdir.empty() ? "." : workdir;
    std::filesystem::create_directories(dir);
    const std::string dataset_path = (dir / "dataset.csv").string();
    refuse_existing(dataset_path, force);
    generate_stage(data, dataset_path, out);

    const RunLog log = run_stage(cfg, dataset_path, out);
    const std::string runlog_path = (dir / ("run-" + log.run_id + ".log")).string();
    refuse_existing(runlog_path, force);
    write_runlog_file(log, runlog_path);
    stamp(out) << "Post-Experiment: run log " << log.run_id << " written to " << runlog_path
               << '\n';

    if (!cfg.analysis) {
      stamp(out) << "Post-Experiment: config has no `analysis` section; stopping after the run\n";
      return 0;
    }
    const std::string report_path = (dir / ("report-" + log.run_id + ".json")).string();
    refuse_existing(report_path, force);
    // Analyze the on-disk log, not the in-memory one, so the pipeline output
    // matches a manual analyze invocation byte for byte.
    const Report report = compute_report(read_runlog_file(runlog_path), *cfg.analysis);
    export_report_file(report, ExportFormat::structured, report_path);
    stamp(out) << "Post-Experiment: report for run " << report.run_id << " written to "
               << report_path << '\n';
    return 0;
  });
}

}  // namespace stbench
