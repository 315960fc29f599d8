// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stbench/loadgen.hpp"

namespace stbench {

enum class Metric {
  throughput,
  latency_mean,
  latency_p50,
  latency_p95,
  latency_p99,
  error_rate,
  resource_usage,
};

const char* to_string(Metric metric);
std::optional<Metric> metric_from_string(std::string_view name);
std::vector<Metric> all_metrics();

enum class GroupBy {
  kind,
  worker_id,
};

const char* to_string(GroupBy key);
std::optional<GroupBy> group_by_from_string(std::string_view name);

struct AnalysisConfig {
  std::vector<Metric> metrics;     // non-empty, no duplicates
  std::vector<GroupBy> group_by;   // empty -> one group "all"
  bool include_warmup = false;

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

// Throws ConfigError: empty or duplicated metrics, duplicated group keys.
void validate_analysis_config(const AnalysisConfig& cfg);

// A computed metric. value is empty for the undefined marker (throughput
// over a zero-duration window); exports render it as literal `undefined`.
struct MetricValue {
  std::optional<double> value;
  std::string unit;  // "ops/s", "ns", "fraction", or a counter unit

  friend bool operator==(const MetricValue&, const MetricValue&) = default;
};

// Metric table for one record group. Group keys look like "all",
// "kind=SpatialRange" or "kind=SpatialRange;worker_id=2". resource_usage
// expands to one entry per adapter counter ("resource_usage.rows_scanned",
// ...); those counters are adapter-wide, so every group repeats the same
// run-scoped delta.
struct GroupMetrics {
  std::string group;
  std::uint64_t op_count = 0;
  std::map<std::string, MetricValue> values;

  friend bool operator==(const GroupMetrics&, const GroupMetrics&) = default;
};

struct Report {
  std::string run_id;
  std::int64_t start_wall_ms = 0;  // run metadata, not the metric window
  std::int64_t end_wall_ms = 0;
  double window_seconds = 0.0;  // last completion - first start of analyzed records
  std::uint64_t op_count = 0;
  std::uint64_t error_count = 0;
  std::vector<std::string> metrics;  // requested metric names
  std::vector<GroupMetrics> groups;  // deterministic order: kind, then worker id
  std::map<std::string, std::int64_t> resource_deltas;  // end minus boundary; empty unless requested

  friend bool operator==(const Report&, const Report&) = default;
};

// Nearest-rank percentile: the value at rank ceil(p*n) of the ascending
// sample, with p = num/den in (0,1]. The rank is computed in integer
// arithmetic, so p50 of 20 samples is exactly rank 10.
std::int64_t percentile_nearest_rank(const std::vector<std::int64_t>& ascending,
                                     std::uint64_t num, std::uint64_t den);

// Metrics over measured-phase records (plus warmup when include_warmup):
// throughput = op count / window_seconds; latency stats over ok-outcome
// records only; error_rate = error records / group records. Throws
// ValidationError when no records fall inside the analyzed phase.
Report compute_report(const RunLog& log, const AnalysisConfig& cfg);

// Side-by-side values for >= 2 structurally equal reports; deltas are
// relative to the first report. delta_pct is empty when either value is
// undefined or the baseline is zero with a differing candidate.
struct Comparison {
  std::vector<std::string> run_ids;  // baseline first

  struct Row {
    std::string group;
    std::string metric;
    std::string unit;
    std::vector<std::optional<double>> values;     // one per run
    std::vector<std::optional<double>> delta_pct;  // one per run; baseline 0

    friend bool operator==(const Row&, const Row&) = default;
  };

  std::vector<Row> rows;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// Throws ValidationError naming the (group, metric) keys missing from some
// report when structures differ.
Comparison compare(const std::vector<Report>& reports);

// structured: one self-describing document, lossless round-trip through
// import_report. tabular: comma-delimited with header `group,metric,value,unit`,
// one row per (group, metric).
enum class ExportFormat {
  structured,
  tabular,
};

const char* to_string(ExportFormat format);
std::optional<ExportFormat> export_format_from_string(std::string_view name);

std::size_t export_report(const Report& report, ExportFormat format, std::ostream& out);
Report import_report(std::istream& in);  // structured form only
std::size_t export_comparison(const Comparison& comparison, ExportFormat format,
                              std::ostream& out);

std::size_t export_report_file(const Report& report, ExportFormat format,
                               const std::string& path);
Report import_report_file(const std::string& path);
std::size_t export_comparison_file(const Comparison& comparison, ExportFormat format,
                                   const std::string& path);

}  // namespace stbench
