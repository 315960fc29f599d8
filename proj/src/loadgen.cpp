// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "stbench/loadgen.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "stbench/error.hpp"
#include "stbench/log.hpp"

namespace stbench {

namespace {

std::int64_t steady_now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::int64_t wall_now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

const char* error_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) != nullptr) return "validation";
  if (dynamic_cast<const ParseError*>(&e) != nullptr) return "parse";
  if (dynamic_cast<const UnsupportedError*>(&e) != nullptr) return "unsupported";
  if (dynamic_cast<const ConfigError*>(&e) != nullptr) return "config";
  if (dynamic_cast<const StateError*>(&e) != nullptr) return "state";
  if (dynamic_cast<const IoError*>(&e) != nullptr) return "io";
  return "runtime";
}

std::int64_t result_row_count(const QueryResult& result) {
  if (is_write_kind(result.kind)) return result.accepted ? 1 : 0;
  return static_cast<std::int64_t>(result.rows.size());
}

nlohmann::json workload_to_json(const WorkloadConfig& cfg) {
  nlohmann::json doc;
  doc["workers"] = cfg.workers;
  doc["total_ops"] = cfg.total_ops;
  doc["warmup_ops"] = cfg.warmup_ops;
  doc["mode"] = to_string(cfg.mode);
  if (cfg.mode == WorkloadMode::fixed_rate) doc["target_rate"] = cfg.target_rate;
  if (cfg.mode == WorkloadMode::closed_loop) doc["think_time_ms"] = cfg.think_time_ms;
  return doc;
}

nlohmann::json sample_to_json(const LabeledResourceSample& sample) {
  nlohmann::json doc;
  doc["label"] = sample.label;
  doc["rows_scanned"] = sample.sample.rows_scanned;
  doc["cells_visited"] = sample.sample.cells_visited;
  doc["points_stored"] = sample.sample.points_stored;
  doc["bytes_estimated"] = sample.sample.bytes_estimated;
  return doc;
}

LabeledResourceSample sample_from_json(const nlohmann::json& doc, std::size_t line) {
  try {
    LabeledResourceSample sample;
    sample.label = doc.at("label").get<std::string>();
    sample.sample.rows_scanned = doc.at("rows_scanned").get<std::uint64_t>();
    sample.sample.cells_visited = doc.at("cells_visited").get<std::uint64_t>();
    sample.sample.points_stored = doc.at("points_stored").get<std::uint64_t>();
    sample.sample.bytes_estimated = doc.at("bytes_estimated").get<std::uint64_t>();
    return sample;
  } catch (const nlohmann::json::exception& e) {
    std::ostringstream out;
    out << "line " << line << ": bad resource sample: " << e.what();
    throw ParseError(out.str());
  }
}

}  // namespace

const char* to_string(WorkloadMode mode) {
  switch (mode) {
    case WorkloadMode::closed_loop:
      return "closed_loop";
    case WorkloadMode::fixed_rate:
      return "fixed_rate";
  }
  return "?";
}

std::optional<WorkloadMode> workload_mode_from_string(std::string_view name) {
  if (name == "closed_loop") return WorkloadMode::closed_loop;
  if (name == "fixed_rate") return WorkloadMode::fixed_rate;
  return std::nullopt;
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::warmup:
      return "warmup";
    case Phase::measured:
      return "measured";
  }
  return "?";
}

std::optional<Phase> phase_from_string(std::string_view name) {
  if (name == "warmup") return Phase::warmup;
  if (name == "measured") return Phase::measured;
  return std::nullopt;
}

std::string ok_outcome() { return "ok"; }

std::string error_outcome(std::string_view code) { return "error:" + std::string(code); }

bool outcome_is_ok(std::string_view outcome) { return outcome == "ok"; }

void validate_workload_config(const WorkloadConfig& cfg) {
  if (cfg.workers < 1) throw ConfigError("workload.workers must be >= 1");
  if (cfg.total_ops < 1) throw ConfigError("workload.total_ops must be >= 1");
  if (cfg.warmup_ops >= cfg.total_ops)
    throw ConfigError("workload.warmup_ops must be < workload.total_ops");
  if (cfg.think_time_ms < 0) throw ConfigError("workload.think_time_ms must be >= 0");
  if (cfg.mode == WorkloadMode::fixed_rate &&
      (!std::isfinite(cfg.target_rate) || !(cfg.target_rate > 0.0)))
    throw ConfigError("workload.target_rate must be > 0 for fixed_rate");
}

bool operator==(const RunLog& a, const RunLog& b) {
  return a.run_id == b.run_id && a.config == b.config && a.start_wall_ms == b.start_wall_ms &&
         a.end_wall_ms == b.end_wall_ms && a.resource_samples == b.resource_samples &&
         a.records == b.records;
}

WorkloadPlan plan_workload(std::vector<QueryInstance> queries, const WorkloadConfig& cfg) {
  validate_workload_config(cfg);
  if (queries.size() != cfg.total_ops) {
    std::ostringstream out;
    out << "plan needs exactly total_ops queries: got " << queries.size() << ", want "
        << cfg.total_ops;
    throw ConfigError(out.str());
  }

  WorkloadPlan plan;
  plan.tasks = std::move(queries);
  plan.warmup_task_count = cfg.warmup_ops;
  plan.assignments.resize(cfg.workers);
  for (std::uint64_t task = 0; task < plan.tasks.size(); ++task)
    plan.assignments[task % cfg.workers].push_back(task);
  return plan;
}

std::string generate_run_id() {
  static std::atomic<std::uint64_t> sequence{0};
  std::ostringstream out;
  out << "r" << wall_now_ms() << "-" << sequence.fetch_add(1);
  return out.str();
}

namespace {

struct WorkerSlice {
  std::uint32_t worker_id = 0;
  const std::uint64_t* tasks = nullptr;
  std::size_t count = 0;
};

// One worker lane for one phase. Buffers records locally; the coordinator
// merges after the join, so measurement has no shared mutable state.
void run_worker(const WorkloadPlan& plan, SutAdapter& adapter, const WorkloadConfig& cfg,
                const RunOptions& options, const WorkerSlice& slice, Phase phase,
                std::int64_t phase_epoch_ns, std::uint64_t phase_first_task,
                std::vector<OpRecord>& out) {
  const double ns_per_op =
      cfg.mode == WorkloadMode::fixed_rate ? 1e9 / cfg.target_rate : 0.0;

  for (std::size_t i = 0; i < slice.count; ++i) {
    const std::uint64_t task_id = slice.tasks[i];

    if (cfg.mode == WorkloadMode::fixed_rate) {
      // Global schedule: in-phase op g starts at epoch + g/rate. Late ops
      // start immediately; the backlog drains at natural speed.
      const std::uint64_t in_phase = task_id - phase_first_task;
      const std::int64_t due_ns =
          phase_epoch_ns +
          static_cast<std::int64_t>(std::llround(static_cast<double>(in_phase) * ns_per_op));
      const std::int64_t now = steady_now_ns();
      if (now < due_ns)
        std::this_thread::sleep_for(std::chrono::nanoseconds(due_ns - now));
    } else if (i > 0 && cfg.think_time_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(cfg.think_time_ms));
    }

    OpRecord record;
    record.task_id = task_id;
    record.worker_id = slice.worker_id;
    record.kind = plan.tasks[task_id].kind;
    record.phase = phase;
    record.start_ns = steady_now_ns();
    try {
      const QueryResult result = options.texts != nullptr
                                     ? adapter.execute_text((*options.texts)[task_id])
                                     : adapter.execute(plan.tasks[task_id]);
      record.outcome = ok_outcome();
      record.result_rows = result_row_count(result);
    } catch (const std::exception& e) {
      record.outcome = error_outcome(error_code_for(e));
      record.result_rows = 0;
    }
    record.latency_ns = steady_now_ns() - record.start_ns;
    out.push_back(record);
  }
}

}  // namespace

RunLog run(const WorkloadPlan& plan, SutAdapter& adapter, const WorkloadConfig& cfg,
           const RunOptions& options) {
  validate_workload_config(cfg);
  if (plan.assignments.size() != cfg.workers)
    throw ConfigError("plan was built for a different worker count");
  std::size_t assigned = 0;
  for (const auto& assignment : plan.assignments) assigned += assignment.size();
  if (assigned != plan.tasks.size() || plan.tasks.size() != cfg.total_ops)
    throw ConfigError("plan task count does not match workload.total_ops");
  if (options.texts != nullptr && options.texts->size() != plan.tasks.size())
    throw ConfigError("pre-translated texts must match the plan size");

  RunLog log;
  log.run_id = options.run_id.empty() ? generate_run_id() : options.run_id;
  log.config = workload_to_json(cfg);
  log.start_wall_ms = wall_now_ms();

  // The start snapshot doubles as the setup probe: an adapter that cannot
  // answer it aborts the run before any op is dispatched.
  try {
    log.resource_samples.push_back(LabeledResourceSample{"start", adapter.resource_snapshot()});
  } catch (const std::exception& e) {
    throw StateError(std::string("adapter failed before any operation: ") + e.what());
  }

  // Round-robin over ascending task ids puts every worker's warmup tasks
  // ahead of its measured tasks, so each phase is a clean prefix.
  std::vector<std::vector<OpRecord>> buffers(cfg.workers);
  for (std::uint32_t w = 0; w < cfg.workers; ++w)
    buffers[w].reserve(plan.assignments[w].size());

  const auto run_phase = [&](Phase phase, std::uint64_t first_task, std::uint64_t end_task) {
    if (first_task == end_task) return;
    const std::int64_t epoch_ns = steady_now_ns();
    std::vector<std::thread> workers;
    workers.reserve(cfg.workers);
    for (std::uint32_t w = 0; w < cfg.workers; ++w) {
      const std::vector<std::uint64_t>& assignment = plan.assignments[w];
      const auto begin = std::lower_bound(assignment.begin(), assignment.end(), first_task);
      const auto end = std::lower_bound(begin, assignment.end(), end_task);
      WorkerSlice slice{w, (begin == end ? nullptr : &*begin),
                        static_cast<std::size_t>(std::distance(begin, end))};
      workers.emplace_back([&plan, &adapter, &cfg, &options, slice, phase, epoch_ns,
                            first_task, &buffer = buffers[w]]() {
        run_worker(plan, adapter, cfg, options, slice, phase, epoch_ns, first_task, buffer);
      });
    }
    for (std::thread& worker : workers) worker.join();
  };

  log_debug("run " + log.run_id + ": warmup phase");
  run_phase(Phase::warmup, 0, plan.warmup_task_count);
  log.resource_samples.push_back(
      LabeledResourceSample{"boundary", adapter.resource_snapshot()});
  log_debug("run " + log.run_id + ": measured phase");
  run_phase(Phase::measured, plan.warmup_task_count, plan.tasks.size());
  log.resource_samples.push_back(LabeledResourceSample{"end", adapter.resource_snapshot()});

  for (std::vector<OpRecord>& buffer : buffers)
    log.records.insert(log.records.end(), buffer.begin(), buffer.end());
  std::sort(log.records.begin(), log.records.end(), [](const OpRecord& a, const OpRecord& b) {
    const std::int64_t end_a = a.start_ns + a.latency_ns;
    const std::int64_t end_b = b.start_ns + b.latency_ns;
    if (end_a != end_b) return end_a < end_b;
    if (a.start_ns != b.start_ns) return a.start_ns < b.start_ns;
    return a.task_id < b.task_id;
  });

  log.end_wall_ms = wall_now_ms();
  return log;
}

std::size_t write_runlog(const RunLog& log, std::ostream& out) {
  nlohmann::json header;
  header["run_id"] = log.run_id;
  header["config"] = log.config;
  header["start_wall_ms"] = log.start_wall_ms;
  header["end_wall_ms"] = log.end_wall_ms;
  nlohmann::json samples = nlohmann::json::array();
  for (const LabeledResourceSample& sample : log.resource_samples)
    samples.push_back(sample_to_json(sample));
  header["resource_samples"] = samples;

  std::size_t bytes = 0;
  std::string line = header.dump();
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.put('\n');
  bytes += line.size() + 1;

  for (const OpRecord& record : log.records) {
    nlohmann::json doc;
    doc["task_id"] = record.task_id;
    doc["worker_id"] = record.worker_id;
    doc["kind"] = to_string(record.kind);
    doc["phase"] = to_string(record.phase);
    doc["start_ns"] = record.start_ns;
    doc["latency_ns"] = record.latency_ns;
    doc["outcome"] = record.outcome;
    doc["result_rows"] = record.result_rows;
    line = doc.dump();
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.put('\n');
    bytes += line.size() + 1;
  }
  out.flush();
  if (!out.good()) throw IoError("run log write failed");
  return bytes;
}

RunLog read_runlog(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: missing run log header");

  RunLog log;
  try {
    const nlohmann::json header = nlohmann::json::parse(line);
    log.run_id = header.at("run_id").get<std::string>();
    log.config = header.at("config");
    log.start_wall_ms = header.at("start_wall_ms").get<std::int64_t>();
    log.end_wall_ms = header.at("end_wall_ms").get<std::int64_t>();
    for (const nlohmann::json& sample : header.at("resource_samples"))
      log.resource_samples.push_back(sample_from_json(sample, 1));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("line 1: bad run log header: ") + e.what());
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    OpRecord record;
    std::string kind_name;
    std::string phase_name;
    try {
      const nlohmann::json doc = nlohmann::json::parse(line);
      record.task_id = doc.at("task_id").get<std::uint64_t>();
      record.worker_id = doc.at("worker_id").get<std::uint32_t>();
      kind_name = doc.at("kind").get<std::string>();
      phase_name = doc.at("phase").get<std::string>();
      record.start_ns = doc.at("start_ns").get<std::int64_t>();
      record.latency_ns = doc.at("latency_ns").get<std::int64_t>();
      record.outcome = doc.at("outcome").get<std::string>();
      record.result_rows = doc.at("result_rows").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
      std::ostringstream out;
      out << "line " << line_no << ": bad run log record: " << e.what();
      throw ParseError(out.str());
    }
    const std::optional<QueryKind> kind = query_kind_from_string(kind_name);
    const std::optional<Phase> phase = phase_from_string(phase_name);
    if (!kind || !phase || record.latency_ns < 0) {
      std::ostringstream out;
      out << "line " << line_no << ": bad run log record: ";
      if (!kind)
        out << "unknown kind \"" << kind_name << "\"";
      else if (!phase)
        out << "unknown phase \"" << phase_name << "\"";
      else
        out << "negative latency";
      throw ParseError(out.str());
    }
    record.kind = *kind;
    record.phase = *phase;
    log.records.push_back(std::move(record));
  }
  if (in.bad()) throw IoError("run log read failed");
  return log;
}

std::size_t write_runlog_file(const RunLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open()) throw IoError("cannot open " + path + " for writing");
  return write_runlog(log, out);
}

RunLog read_runlog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError("cannot open " + path);
  return read_runlog(in);
}

}  // namespace stbench
