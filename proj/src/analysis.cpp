// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "stbench/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "stbench/core.hpp"
#include "stbench/error.hpp"

namespace stbench {

namespace {

constexpr const char* kUndefined = "undefined";

struct CounterDelta {
  const char* name;
  const char* unit;
  std::int64_t value;
};

std::vector<CounterDelta> resource_deltas_between(const ResourceSample& from,
                                                  const ResourceSample& to) {
  const auto delta = [](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::int64_t>(b) - static_cast<std::int64_t>(a);
  };
  return {
      {"rows_scanned", "rows", delta(from.rows_scanned, to.rows_scanned)},
      {"cells_visited", "cells", delta(from.cells_visited, to.cells_visited)},
      {"points_stored", "points", delta(from.points_stored, to.points_stored)},
      {"bytes_estimated", "bytes", delta(from.bytes_estimated, to.bytes_estimated)},
  };
}

ResourceSample sample_with_label(const RunLog& log, std::string_view label) {
  for (const LabeledResourceSample& sample : log.resource_samples)
    if (sample.label == label) return sample.sample;
  return ResourceSample{};  // hand-built logs may carry no samples
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (const char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string value_or_undefined(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string(kUndefined);
}

nlohmann::json value_to_json(const MetricValue& value) {
  nlohmann::json doc;
  doc["value"] = value.value ? nlohmann::json(*value.value) : nlohmann::json();
  doc["unit"] = value.unit;
  return doc;
}

}  // namespace

const char* to_string(Metric metric) {
  switch (metric) {
    case Metric::throughput:
      return "throughput";
    case Metric::latency_mean:
      return "latency_mean";
    case Metric::latency_p50:
      return "latency_p50";
    case Metric::latency_p95:
      return "latency_p95";
    case Metric::latency_p99:
      return "latency_p99";
    case Metric::error_rate:
      return "error_rate";
    case Metric::resource_usage:
      return "resource_usage";
  }
  return "?";
}

std::optional<Metric> metric_from_string(std::string_view name) {
  for (const Metric metric : all_metrics())
    if (name == to_string(metric)) return metric;
  return std::nullopt;
}

std::vector<Metric> all_metrics() {
  return {Metric::throughput,  Metric::latency_mean, Metric::latency_p50, Metric::latency_p95,
          Metric::latency_p99, Metric::error_rate,   Metric::resource_usage};
}

const char* to_string(GroupBy key) {
  switch (key) {
    case GroupBy::kind:
      return "kind";
    case GroupBy::worker_id:
      return "worker_id";
  }
  return "?";
}

std::optional<GroupBy> group_by_from_string(std::string_view name) {
  if (name == "kind") return GroupBy::kind;
  if (name == "worker_id") return GroupBy::worker_id;
  return std::nullopt;
}

void validate_analysis_config(const AnalysisConfig& cfg) {
  if (cfg.metrics.empty()) throw ConfigError("analysis.metrics must not be empty");
  std::set<Metric> metrics(cfg.metrics.begin(), cfg.metrics.end());
  if (metrics.size() != cfg.metrics.size())
    throw ConfigError("analysis.metrics must not repeat a metric");
  std::set<GroupBy> keys(cfg.group_by.begin(), cfg.group_by.end());
  if (keys.size() != cfg.group_by.size())
    throw ConfigError("analysis.group_by must not repeat a key");
}

std::int64_t percentile_nearest_rank(const std::vector<std::int64_t>& ascending,
                                     std::uint64_t num, std::uint64_t den) {
  if (ascending.empty()) throw ValidationError("percentile of an empty sample");
  if (num < 1 || den < 1 || num > den)
    throw ConfigError("percentile must satisfy 0 < num/den <= 1");
  const std::uint64_t n = ascending.size();
  const std::uint64_t rank = (num * n + den - 1) / den;  // ceil(num*n/den), exactly
  return ascending[rank - 1];
}

Report compute_report(const RunLog& log, const AnalysisConfig& cfg) {
  validate_analysis_config(cfg);

  const bool by_kind =
      std::find(cfg.group_by.begin(), cfg.group_by.end(), GroupBy::kind) != cfg.group_by.end();
  const bool by_worker = std::find(cfg.group_by.begin(), cfg.group_by.end(),
                                   GroupBy::worker_id) != cfg.group_by.end();

  struct GroupAccumulator {
    std::uint64_t count = 0;
    std::uint64_t errors = 0;
    std::vector<std::int64_t> ok_latencies;
  };
  // Key: (kind order, worker id), -1 where the axis is not grouped. Map order
  // fixes the deterministic group order of the report.
  std::map<std::pair<std::int64_t, std::int64_t>, GroupAccumulator> groups;

  std::int64_t first_start = 0;
  std::int64_t last_completion = 0;
  std::uint64_t op_count = 0;
  std::uint64_t error_count = 0;

  for (const OpRecord& record : log.records) {
    if (!cfg.include_warmup && record.phase == Phase::warmup) continue;
    const std::pair<std::int64_t, std::int64_t> key{
        by_kind ? static_cast<std::int64_t>(record.kind) : -1,
        by_worker ? static_cast<std::int64_t>(record.worker_id) : -1};
    GroupAccumulator& acc = groups[key];
    ++acc.count;
    if (outcome_is_ok(record.outcome)) {
      acc.ok_latencies.push_back(record.latency_ns);
    } else {
      ++acc.errors;
      ++error_count;
    }
    if (op_count == 0 || record.start_ns < first_start) first_start = record.start_ns;
    const std::int64_t completion = record.start_ns + record.latency_ns;
    if (op_count == 0 || completion > last_completion) last_completion = completion;
    ++op_count;
  }
  if (op_count == 0)
    throw ValidationError(cfg.include_warmup
                              ? "run log has no records to analyze"
                              : "run log has no measured-phase records to analyze");

  Report report;
  report.run_id = log.run_id;
  report.start_wall_ms = log.start_wall_ms;
  report.end_wall_ms = log.end_wall_ms;
  report.window_seconds =
      static_cast<double>(last_completion - first_start) / 1e9;
  report.op_count = op_count;
  report.error_count = error_count;
  for (const Metric metric : cfg.metrics) report.metrics.emplace_back(to_string(metric));

  const bool want_resources = std::find(cfg.metrics.begin(), cfg.metrics.end(),
                                        Metric::resource_usage) != cfg.metrics.end();
  std::vector<CounterDelta> deltas;
  if (want_resources) {
    const ResourceSample from =
        sample_with_label(log, cfg.include_warmup ? "start" : "boundary");
    const ResourceSample to = sample_with_label(log, "end");
    deltas = resource_deltas_between(from, to);
    for (const CounterDelta& delta : deltas) report.resource_deltas[delta.name] = delta.value;
  }

  for (auto& [key, acc] : groups) {
    GroupMetrics group;
    if (!by_kind && !by_worker) {
      group.group = "all";
    } else {
      std::ostringstream label;
      if (by_kind) label << "kind=" << to_string(static_cast<QueryKind>(key.first));
      if (by_worker) {
        if (by_kind) label << ";";
        label << "worker_id=" << key.second;
      }
      group.group = label.str();
    }
    group.op_count = acc.count;

    std::sort(acc.ok_latencies.begin(), acc.ok_latencies.end());
    const auto latency_percentile = [&acc](std::uint64_t num) -> MetricValue {
      if (acc.ok_latencies.empty()) return MetricValue{std::nullopt, "ns"};
      return MetricValue{
          static_cast<double>(percentile_nearest_rank(acc.ok_latencies, num, 100)), "ns"};
    };

    for (const Metric metric : cfg.metrics) {
      switch (metric) {
        case Metric::throughput: {
          if (report.window_seconds > 0.0)
            group.values["throughput"] = MetricValue{
                static_cast<double>(acc.count) / report.window_seconds, "ops/s"};
          else
            group.values["throughput"] = MetricValue{std::nullopt, "ops/s"};
          break;
        }
        case Metric::latency_mean: {
          if (acc.ok_latencies.empty()) {
            group.values["latency_mean"] = MetricValue{std::nullopt, "ns"};
          } else {
            double sum = 0.0;
            for (const std::int64_t v : acc.ok_latencies) sum += static_cast<double>(v);
            group.values["latency_mean"] =
                MetricValue{sum / static_cast<double>(acc.ok_latencies.size()), "ns"};
          }
          break;
        }
        case Metric::latency_p50:
          group.values["latency_p50"] = latency_percentile(50);
          break;
        case Metric::latency_p95:
          group.values["latency_p95"] = latency_percentile(95);
          break;
        case Metric::latency_p99:
          group.values["latency_p99"] = latency_percentile(99);
          break;
        case Metric::error_rate:
          group.values["error_rate"] = MetricValue{
              static_cast<double>(acc.errors) / static_cast<double>(acc.count), "fraction"};
          break;
        case Metric::resource_usage:
          // Adapter counters cannot be attributed to one group; every group
          // reports the run-scoped deltas.
          for (const CounterDelta& delta : deltas)
            group.values[std::string("resource_usage.") + delta.name] =
                MetricValue{static_cast<double>(delta.value), delta.unit};
          break;
      }
    }
    report.groups.push_back(std::move(group));
  }
  return report;
}

Comparison compare(const std::vector<Report>& reports) {
  if (reports.size() < 2) throw ValidationError("comparison needs at least two reports");

  const Report& baseline = reports.front();
  std::vector<std::pair<std::string, std::string>> keys;  // (group, metric)
  for (const GroupMetrics& group : baseline.groups)
    for (const auto& [metric, value] : group.values) keys.emplace_back(group.group, metric);

  // Every report must expose exactly the baseline's (group, metric) keys.
  for (std::size_t i = 1; i < reports.size(); ++i) {
    std::vector<std::pair<std::string, std::string>> other;
    for (const GroupMetrics& group : reports[i].groups)
      for (const auto& [metric, value] : group.values) other.emplace_back(group.group, metric);
    std::vector<std::pair<std::string, std::string>> sorted_keys = keys;
    std::sort(sorted_keys.begin(), sorted_keys.end());
    std::sort(other.begin(), other.end());
    if (sorted_keys != other) {
      std::ostringstream out;
      out << "report " << reports[i].run_id << " does not match the baseline structure;";
      std::vector<std::pair<std::string, std::string>> missing;
      std::set_difference(sorted_keys.begin(), sorted_keys.end(), other.begin(), other.end(),
                          std::back_inserter(missing));
      for (const auto& [group, metric] : missing)
        out << " missing " << group << "/" << metric;
      missing.clear();
      std::set_difference(other.begin(), other.end(), sorted_keys.begin(), sorted_keys.end(),
                          std::back_inserter(missing));
      for (const auto& [group, metric] : missing)
        out << " extra " << group << "/" << metric;
      throw ValidationError(out.str());
    }
  }

  const auto lookup = [](const Report& report, const std::string& group,
                         const std::string& metric) -> const MetricValue& {
    for (const GroupMetrics& g : report.groups)
      if (g.group == group) return g.values.at(metric);
    throw ValidationError("comparison lost group " + group);
  };

  Comparison comparison;
  for (const Report& report : reports) comparison.run_ids.push_back(report.run_id);
  for (const auto& [group, metric] : keys) {
    Comparison::Row row;
    row.group = group;
    row.metric = metric;
    const MetricValue& base = lookup(baseline, group, metric);
    row.unit = base.unit;
    for (const Report& report : reports) {
      const MetricValue& value = lookup(report, group, metric);
      row.values.push_back(value.value);
      if (!base.value || !value.value) {
        row.delta_pct.push_back(std::nullopt);
      } else if (*value.value == *base.value) {
        row.delta_pct.push_back(0.0);
      } else if (*base.value == 0.0) {
        row.delta_pct.push_back(std::nullopt);
      } else {
        row.delta_pct.push_back((*value.value - *base.value) / *base.value * 100.0);
      }
    }
    comparison.rows.push_back(std::move(row));
  }
  return comparison;
}

std::size_t export_report(const Report& report, ExportFormat format, std::ostream& out) {
  std::string payload;
  if (format == ExportFormat::structured) {
    nlohmann::json doc;
    doc["run_id"] = report.run_id;
    doc["start_wall_ms"] = report.start_wall_ms;
    doc["end_wall_ms"] = report.end_wall_ms;
    doc["window_seconds"] = report.window_seconds;
    doc["op_count"] = report.op_count;
    doc["error_count"] = report.error_count;
    doc["metrics"] = report.metrics;
    nlohmann::json groups = nlohmann::json::array();
    for (const GroupMetrics& group : report.groups) {
      nlohmann::json g;
      g["group"] = group.group;
      g["op_count"] = group.op_count;
      nlohmann::json values = nlohmann::json::object();
      for (const auto& [name, value] : group.values) values[name] = value_to_json(value);
      g["values"] = values;
      groups.push_back(g);
    }
    doc["groups"] = groups;
    doc["resource_deltas"] = report.resource_deltas;
    payload = doc.dump(2);
    payload += '\n';
  } else {
    std::ostringstream table;
    table << "group,metric,value,unit\n";
    for (const GroupMetrics& group : report.groups)
      for (const auto& [name, value] : group.values)
        table << csv_field(group.group) << ',' << name << ','
              << value_or_undefined(value.value) << ',' << value.unit << '\n';
    payload = table.str();
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.flush();
  if (!out.good()) throw IoError("report write failed");
  return payload.size();
}

Report import_report(std::istream& in) {
  Report report;
  try {
    const nlohmann::json doc = nlohmann::json::parse(in);
    report.run_id = doc.at("run_id").get<std::string>();
    report.start_wall_ms = doc.at("start_wall_ms").get<std::int64_t>();
    report.end_wall_ms = doc.at("end_wall_ms").get<std::int64_t>();
    report.window_seconds = doc.at("window_seconds").get<double>();
    report.op_count = doc.at("op_count").get<std::uint64_t>();
    report.error_count = doc.at("error_count").get<std::uint64_t>();
    report.metrics = doc.at("metrics").get<std::vector<std::string>>();
    for (const nlohmann::json& g : doc.at("groups")) {
      GroupMetrics group;
      group.group = g.at("group").get<std::string>();
      group.op_count = g.at("op_count").get<std::uint64_t>();
      for (const auto& [name, value] : g.at("values").items()) {
        MetricValue metric;
        if (!value.at("value").is_null()) metric.value = value.at("value").get<double>();
        metric.unit = value.at("unit").get<std::string>();
        group.values[name] = metric;
      }
      report.groups.push_back(std::move(group));
    }
    for (const auto& [name, value] : doc.at("resource_deltas").items())
      report.resource_deltas[name] = value.get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad report document: ") + e.what());
  }
  return report;
}

const char* to_string(ExportFormat format) {
  switch (format) {
    case ExportFormat::structured:
      return "structured";
    case ExportFormat::tabular:
      return "tabular";
  }
  return "?";
}

std::optional<ExportFormat> export_format_from_string(std::string_view name) {
  if (name == "structured") return ExportFormat::structured;
  if (name == "tabular") return ExportFormat::tabular;
  return std::nullopt;
}

std::size_t export_comparison(const Comparison& comparison, ExportFormat format,
                              std::ostream& out) {
  std::string payload;
  if (format == ExportFormat::structured) {
    nlohmann::json doc;
    doc["run_ids"] = comparison.run_ids;
    nlohmann::json rows = nlohmann::json::array();
    for (const Comparison::Row& row : comparison.rows) {
      nlohmann::json r;
      r["group"] = row.group;
      r["metric"] = row.metric;
      r["unit"] = row.unit;
      nlohmann::json values = nlohmann::json::array();
      for (const std::optional<double>& value : row.values)
        values.push_back(value ? nlohmann::json(*value) : nlohmann::json());
      r["values"] = values;
      nlohmann::json deltas = nlohmann::json::array();
      for (const std::optional<double>& delta : row.delta_pct)
        deltas.push_back(delta ? nlohmann::json(*delta) : nlohmann::json());
      r["delta_pct"] = deltas;
      rows.push_back(r);
    }
    doc["rows"] = rows;
    payload = doc.dump(2);
    payload += '\n';
  } else {
    std::ostringstream table;
    table << "group,metric,unit";
    for (const std::string& run_id : comparison.run_ids) table << ',' << csv_field(run_id);
    for (const std::string& run_id : comparison.run_ids)
      table << ',' << csv_field(run_id + ":delta_pct");
    table << '\n';
    for (const Comparison::Row& row : comparison.rows) {
      table << csv_field(row.group) << ',' << row.metric << ',' << row.unit;
      for (const std::optional<double>& value : row.values)
        table << ',' << value_or_undefined(value);
      for (const std::optional<double>& delta : row.delta_pct)
        table << ',' << value_or_undefined(delta);
      table << '\n';
    }
    payload = table.str();
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.flush();
  if (!out.good()) throw IoError("comparison write failed");
  return payload.size();
}

std::size_t export_report_file(const Report& report, ExportFormat format,
                               const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open()) throw IoError("cannot open " + path + " for writing");
  return export_report(report, format, out);
}

Report import_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError("cannot open " + path);
  return import_report(in);
}

std::size_t export_comparison_file(const Comparison& comparison, ExportFormat format,
                                   const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open()) throw IoError("cannot open " + path + " for writing");
  return export_comparison(comparison, format, out);
}

}  // namespace stbench
