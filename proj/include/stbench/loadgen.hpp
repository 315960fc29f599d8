// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "stbench/query.hpp"
#include "stbench/sut.hpp"

namespace stbench {

// closed_loop: each worker issues its next op as soon as the previous one
// returns, sleeping think_time_ms in between. fixed_rate: global op starts
// are scheduled at 1/target_rate spacing and partitioned round-robin across
// workers; a late op starts immediately, with no catch-up bursts beyond the
// natural backlog draining.
enum class WorkloadMode {
  closed_loop,
  fixed_rate,
};

const char* to_string(WorkloadMode mode);
std::optional<WorkloadMode> workload_mode_from_string(std::string_view name);

struct WorkloadConfig {
  std::uint32_t workers = 1;     // concurrent execution lanes, > 0
  std::uint64_t total_ops = 1;   // > 0
  std::uint64_t warmup_ops = 0;  // < total_ops; excluded from analysis by default
  WorkloadMode mode = WorkloadMode::closed_loop;
  double target_rate = 0.0;      // ops/second, > 0 iff mode == fixed_rate
  std::int64_t think_time_ms = 0;  // >= 0, closed_loop only

  friend bool operator==(const WorkloadConfig&, const WorkloadConfig&) = default;
};

// Throws ConfigError naming the offending field.
void validate_workload_config(const WorkloadConfig& cfg);

// Exactly-once task assignment. task_id i refers to tasks[i]; assignments
// partition [0, tasks.size()) round-robin, preserving input order per worker.
// Tasks with task_id < warmup_task_count run in the warmup phase.
struct WorkloadPlan {
  std::vector<std::vector<std::uint64_t>> assignments;  // one list per worker
  std::vector<QueryInstance> tasks;
  std::uint64_t warmup_task_count = 0;

  friend bool operator==(const WorkloadPlan&, const WorkloadPlan&) = default;
};

enum class Phase {
  warmup,
  measured,
};

const char* to_string(Phase phase);
std::optional<Phase> phase_from_string(std::string_view name);

// Outcome wire form: "ok", or "error:<code>" for failed ops. Rejected but
// well-formed writes are still "ok"; only adapter faults are errors.
std::string ok_outcome();
std::string error_outcome(std::string_view code);
bool outcome_is_ok(std::string_view outcome);

// One executed task. start_ns is a monotonic-clock reading; latency_ns spans
// just-before-dispatch to result-received.
struct OpRecord {
  std::uint64_t task_id = 0;
  std::uint32_t worker_id = 0;
  QueryKind kind = QueryKind::SpatialRange;
  Phase phase = Phase::measured;
  std::int64_t start_ns = 0;
  std::int64_t latency_ns = 0;
  std::string outcome = "ok";
  std::int64_t result_rows = 0;

  friend bool operator==(const OpRecord&, const OpRecord&) = default;
};

// Adapter counters captured around the run; labels are "start",
// "boundary" (warmup/measured transition) and "end".
struct LabeledResourceSample {
  std::string label;
  ResourceSample sample;

  friend bool operator==(const LabeledResourceSample&, const LabeledResourceSample&) = default;
};

// Complete record of one workload execution. records are ordered by
// completion time; there is exactly one per planned task.
struct RunLog {
  std::string run_id;
  nlohmann::json config = nlohmann::json::object();  // config snapshot
  std::int64_t start_wall_ms = 0;  // wall clock, for metadata only
  std::int64_t end_wall_ms = 0;
  std::vector<LabeledResourceSample> resource_samples;
  std::vector<OpRecord> records;
};

bool operator==(const RunLog& a, const RunLog& b);

// Round-robin by index: task i goes to worker i % cfg.workers. Throws
// ConfigError when queries.size() != cfg.total_ops or cfg is invalid.
WorkloadPlan plan_workload(std::vector<QueryInstance> queries, const WorkloadConfig& cfg);

struct RunOptions {
  // When set, workers call execute_text(texts[task_id]) instead of
  // execute(tasks[task_id]). Size must equal plan.tasks.size(); translation
  // happens before the run so it never counts against latency.
  const std::vector<QueryText>* texts = nullptr;
  std::string run_id;  // generated when empty
};

// Drives the adapter with plan's tasks. Errors from individual ops become
// outcome=error records; only a failure before any op dispatch aborts
// (StateError). The adapter must be prepared and loaded.
RunLog run(const WorkloadPlan& plan, SutAdapter& adapter, const WorkloadConfig& cfg,
           const RunOptions& options = {});

// Wall-clock-derived identifier, unique within a process.
std::string generate_run_id();

// Newline-delimited JSON: a header object first (run_id, config, wall times,
// resource samples), then one record object per op in completion order with
// fields exactly task_id, worker_id, kind, phase, start_ns, latency_ns,
// outcome, result_rows. Returns bytes written.
std::size_t write_runlog(const RunLog& log, std::ostream& out);
RunLog read_runlog(std::istream& in);  // throws ParseError with line number

std::size_t write_runlog_file(const RunLog& log, const std::string& path);
RunLog read_runlog_file(const std::string& path);

}  // namespace stbench
