// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "stbench/core.hpp"
#include "stbench/error.hpp"
#include "stbench/sut.hpp"

namespace stbench::test {

inline TrajectoryPoint tp(ObjectId id, TimeStamp t, double x, double y) {
  return TrajectoryPoint{id, t, {x, y}};
}

inline Dataset make_dataset(std::vector<Trajectory> trajectories) {
  Dataset d;
  d.trajectories = std::move(trajectories);
  d.extent = compute_extent(d.trajectories);
  d.time_span = compute_time_span(d.trajectories);
  return d;
}

// Two short trajectories on a small integer lattice; several points sit on
// exact grid-cell boundaries.
inline Dataset tiny_dataset() {
  Trajectory a{1, {tp(1, 0, 0, 0), tp(1, 1000, 1, 1), tp(1, 2000, 2, 0), tp(1, 3000, 3, 1)}};
  Trajectory b{7, {tp(7, 0, 4, 4), tp(7, 1000, 3, 3), tp(7, 2000, 2, 2), tp(7, 3000, 1, 1)}};
  return make_dataset({a, b});
}

// Adapter stub with scripted behavior: per-op fixed latency, failures every
// Nth op, and call counting. Thread safe.
class ScriptedAdapter final : public SutAdapter {
 public:
  struct Options {
    std::int64_t latency_ms = 0;   // sleep per op
    std::uint64_t fail_every = 0;  // every Nth op throws (0 = never)
    bool fail_snapshot = false;    // resource_snapshot throws
  };

  ScriptedAdapter() = default;
  explicit ScriptedAdapter(Options options) : options_(options) {}

  [[nodiscard]] std::string name() const override { return "scripted"; }
  [[nodiscard]] std::string dialect() const override { return "neutral"; }
  void prepare() override {}
  void bulk_load(const Dataset&) override {}
  void build_index(const IndexSpec&) override {}

  QueryResult execute(const QueryInstance& instance) override {
    step();
    QueryResult result;
    result.kind = instance.kind;
    result.accepted = is_write_kind(instance.kind);
    return result;
  }

  QueryResult execute_text(const QueryText&) override {
    ++text_calls_;
    step();
    return QueryResult{};
  }

  ResourceSample resource_snapshot() override {
    if (options_.fail_snapshot) throw IoError("scripted snapshot failure");
    ResourceSample sample;
    sample.rows_scanned = calls_.load();
    return sample;
  }

  void teardown() override {}

  [[nodiscard]] std::uint64_t calls() const { return calls_.load(); }
  [[nodiscard]] std::uint64_t text_calls() const { return text_calls_.load(); }

 private:
  void step() {
    const std::uint64_t n = ++calls_;
    if (options_.latency_ms > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(options_.latency_ms));
    if (options_.fail_every > 0 && n % options_.fail_every == 0)
      throw ValidationError("scripted failure");
  }

  Options options_{};
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<std::uint64_t> text_calls_{0};
};

// Self-cleaning unique directory under the system temp root.
class TempDir {
 public:
  TempDir() {
    static std::atomic<std::uint64_t> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("stbench-test-" + std::to_string(::getpid()) + "-" + std::to_string(stamp) + "-" +
             std::to_string(++counter));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  [[nodiscard]] std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

// Complete, valid five-section suite document at toy scale; tests tweak
// individual fields from here.
inline nlohmann::json sample_config_doc() {
  return nlohmann::json{
      {"data",
       {{"seed", 11},
        {"n_objects", 5},
        {"points_per_object", 20},
        {"region", {0.0, 0.0, 100.0, 100.0}},
        {"speed_min", 1.0},
        {"speed_max", 10.0},
        {"sample_interval_ms", 1000}}},
      {"queries",
       {{"templates",
         nlohmann::json::array(
             {{{"kind", "SpatialRange"}, {"weight", 3.0}, {"spatial_fraction", 0.2}},
              {{"kind", "SpatioTemporalRange"},
               {"weight", 2.0},
               {"spatial_fraction", 0.2},
               {"temporal_fraction", 0.3}},
              {{"kind", "TemporalRange"}, {"weight", 1.0}, {"temporal_fraction", 0.2}},
              {{"kind", "KNearestNeighbors"}, {"weight", 2.0}, {"k", 3}},
              {{"kind", "ObjectTrajectory"}, {"weight", 1.0}},
              {{"kind", "AppendPoint"}, {"weight", 1.0}}})},
        {"seed", 7},
        {"count", 40},
        {"dialect", "neutral"}}},
      {"sut",
       {{"adapter", "embedded"},
        {"index", {{"kind", "grid"}, {"cell_size", 25.0}, {"time_bucket_ms", 5000}}}}},
      {"workload",
       {{"workers", 4},
        {"total_ops", 40},
        {"warmup_ops", 8},
        {"mode", "closed_loop"},
        {"think_time_ms", 0}}},
      {"analysis",
       {{"metrics",
         {"throughput", "latency_mean", "latency_p50", "latency_p95", "latency_p99",
          "error_rate", "resource_usage"}},
        {"group_by", {"kind"}}}}};
}

}  // namespace stbench::test
