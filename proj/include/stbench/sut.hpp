// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "stbench/core.hpp"
#include "stbench/query.hpp"

namespace stbench {

struct IndexSpec {
  enum class Kind { none, grid };
  Kind kind = Kind::none;
  double cell_size = 0.0;           // grid: spatial cell edge, > 0
  std::int64_t time_bucket_ms = 0;  // grid: temporal bucket, > 0

  friend bool operator==(const IndexSpec&, const IndexSpec&) = default;
};

void validate_index_spec(const IndexSpec& spec);  // throws ConfigError
const char* to_string(IndexSpec::Kind kind);
std::optional<IndexSpec::Kind> index_kind_from_string(std::string_view name);

// Logical resource telemetry. rows_scanned / cells_visited are monotonic
// counters within one adapter lifetime; points_stored / bytes_estimated are
// gauges of the current contents. External adapters map the same fields onto
// their own telemetry where they can.
struct ResourceSample {
  std::uint64_t rows_scanned = 0;
  std::uint64_t cells_visited = 0;
  std::uint64_t points_stored = 0;
  std::uint64_t bytes_estimated = 0;

  friend bool operator==(const ResourceSample&, const ResourceSample&) = default;
};

// Read results carry deduplicated rows in canonical (object_id, t, x, y)
// order; write results carry only the accepted flag.
struct QueryResult {
  QueryKind kind = QueryKind::SpatialRange;
  std::vector<TrajectoryPoint> rows;
  bool accepted = false;

  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

// Sorts by (object_id, t, x, y) and drops duplicates, the canonical set form
// used for result comparison.
void canonicalize_rows(std::vector<TrajectoryPoint>& rows);

// Exact evaluation by full scan; the independent reference every execution
// path is checked against. Read kinds only (UnsupportedError for writes).
QueryResult bruteforce_eval(const QueryInstance& instance, const Dataset& dataset);

// The contract a system under test must satisfy. Lifecycle: prepare ->
// bulk_load -> build_index (optional) -> execute* -> teardown. execute must
// tolerate concurrent calls from many workers.
class SutAdapter {
 public:
  virtual ~SutAdapter() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  // Query-text dialect this adapter accepts in execute_text.
  [[nodiscard]] virtual std::string dialect() const = 0;

  virtual void prepare() = 0;
  virtual void bulk_load(const Dataset& dataset) = 0;
  virtual void build_index(const IndexSpec& spec) = 0;
  virtual QueryResult execute(const QueryInstance& instance) = 0;
  virtual QueryResult execute_text(const QueryText& text) = 0;
  virtual ResourceSample resource_snapshot() = 0;
  virtual void teardown() = 0;
};

// Embedded reference store. Reads evaluate against an immutable snapshot
// (optionally grid-indexed); writes serialize through a single commit point
// that swaps in a new snapshot, so a write's effects are visible to every
// read started after it completes. Results are always equal, as sets, to
// bruteforce_eval over the current contents.
class EmbeddedStore final : public SutAdapter {
 public:
  EmbeddedStore();
  ~EmbeddedStore() override;

  [[nodiscard]] std::string name() const override { return "embedded"; }
  [[nodiscard]] std::string dialect() const override { return "neutral"; }

  void prepare() override;
  void bulk_load(const Dataset& dataset) override;
  void build_index(const IndexSpec& spec) override;
  QueryResult execute(const QueryInstance& instance) override;
  QueryResult execute_text(const QueryText& text) override;
  ResourceSample resource_snapshot() override;
  void teardown() override;

  // Copy of the current contents, for validation and tests.
  [[nodiscard]] Dataset snapshot_dataset() const;

 private:
  struct Snapshot;
  enum class State { created, prepared, loaded, torn_down };

  std::shared_ptr<const Snapshot> load_snapshot() const;
  QueryResult append_point(const QueryInstance& instance);

  std::shared_ptr<const Snapshot> snapshot_;
  std::mutex write_mutex_;  // serializes AppendPoint commits and reindexing
  std::atomic<std::uint64_t> rows_scanned_{0};
  std::atomic<std::uint64_t> cells_visited_{0};
  std::atomic<State> state_{State::created};
};

using AdapterFactory =
    std::function<std::unique_ptr<SutAdapter>(const nlohmann::json& options)>;

class AdapterRegistry {
 public:
  void register_adapter(std::string name, AdapterFactory factory);
  [[nodiscard]] bool has(std::string_view name) const;
  [[nodiscard]] std::vector<std::string> names() const;

  // Returns the adapter in prepared-pending state. Unknown names raise
  // ConfigError listing the registered adapters.
  [[nodiscard]] std::unique_ptr<SutAdapter> make(std::string_view name,
                                                 const nlohmann::json& options) const;

 private:
  std::map<std::string, AdapterFactory, std::less<>> factories_;
};

// Registry with the shipped "embedded" adapter. External systems register
// their own factories against the same interface.
AdapterRegistry make_default_adapter_registry();

std::unique_ptr<SutAdapter> adapter_for(std::string_view name,
                                        const nlohmann::json& options,
                                        const AdapterRegistry& registry);

}  // namespace stbench
