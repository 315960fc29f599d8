// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stbench/core.hpp"

namespace stbench {

// The abstract query model: spatial, temporal and spatiotemporal windows,
// k-nearest-neighbors, whole-trajectory retrieval, and one write kind.
enum class QueryKind {
  SpatialRange,
  TemporalRange,
  SpatioTemporalRange,
  KNearestNeighbors,
  ObjectTrajectory,
  AppendPoint,
};

const char* to_string(QueryKind kind);
std::optional<QueryKind> query_kind_from_string(std::string_view name);
bool is_write_kind(QueryKind kind);  // true only for AppendPoint

// Dialect-independent query description with parameter distributions. Fields
// irrelevant to `kind` must stay unset; see validate_templates.
struct QueryTemplate {
  QueryKind kind = QueryKind::SpatialRange;
  double weight = 1.0;  // non-negative mix share
  std::optional<double> spatial_fraction;   // (0,1]; window side / extent side
  std::optional<double> temporal_fraction;  // (0,1]; window length / time span
  std::optional<std::uint32_t> k;           // k-NN only
  bool anchored = false;  // center windows on existing data points

  friend bool operator==(const QueryTemplate&, const QueryTemplate&) = default;
};

// Throws ConfigError: empty set, all-zero weights, out-of-range fractions,
// or a field set on a kind that does not use it.
void validate_templates(const std::vector<QueryTemplate>& templates);

// A concrete query. Exactly the parameter set demanded by `kind` is present:
//   SpatialRange        -> region
//   TemporalRange       -> interval
//   SpatioTemporalRange -> region + interval
//   KNearestNeighbors   -> center + at_time + k
//   ObjectTrajectory    -> object_id + interval
//   AppendPoint         -> new_point
struct QueryInstance {
  std::uint64_t instance_id = 0;
  QueryKind kind = QueryKind::SpatialRange;
  std::optional<Region> region;
  std::optional<TimeInterval> interval;
  std::optional<Point2D> center;
  std::optional<TimeStamp> at_time;
  std::optional<std::uint32_t> k;
  std::optional<ObjectId> object_id;
  std::optional<TrajectoryPoint> new_point;

  friend bool operator==(const QueryInstance&, const QueryInstance&) = default;

  // Equality modulo instance_id; the neutral-grammar round trip preserves
  // exactly this.
  [[nodiscard]] bool equivalent_to(const QueryInstance& other) const;
};

std::vector<Violation> validate_instance(const QueryInstance& instance);

// Largest-remainder apportionment of `count` by `weights`. Ties broken by
// larger fractional part first, then lower index.
std::vector<std::uint64_t> apportion_largest_remainder(const std::vector<double>& weights,
                                                       std::uint64_t count);

// Instantiates `count` queries compatible with `dataset`: window sizes are
// fractions of the dataset extents, anchored templates center windows on a
// uniformly chosen existing point, and per-kind counts follow the
// largest-remainder apportionment of the template weights. Deterministic in
// (templates, dataset, seed, count).
std::vector<QueryInstance> instantiate(const std::vector<QueryTemplate>& templates,
                                       const Dataset& dataset,
                                       std::uint64_t seed,
                                       std::uint64_t count);

// Half-width of the time window that defines k-NN candidacy: half the
// smallest sampling gap (rounded up), so every in-span at_time has at least
// one candidate sample. Datasets without a positive gap fall back to the
// whole time span (every point is a candidate).
TimeStamp knn_time_tolerance_ms(const Dataset& dataset);

struct QueryText {
  std::string dialect;
  std::string text;

  friend bool operator==(const QueryText&, const QueryText&) = default;
};

// A registered query language: emitter turns a valid instance into dialect
// text, throwing UnsupportedError for kinds it cannot express.
struct Dialect {
  std::string name;
  std::function<std::string(const QueryInstance&)> emitter;
};

class DialectRegistry {
 public:
  // Throws ConfigError when the name is already registered.
  void register_dialect(Dialect dialect);
  [[nodiscard]] bool has(std::string_view name) const;
  [[nodiscard]] std::vector<std::string> names() const;

  // Validates the instance, then emits. Throws ConfigError for unknown
  // dialects (naming the registered ones) and ValidationError for malformed
  // instances.
  [[nodiscard]] QueryText translate(const QueryInstance& instance,
                                    std::string_view dialect_name) const;

 private:
  std::map<std::string, Dialect, std::less<>> dialects_;
};

struct GenericSqlOptions {
  // Half-width of the `t BETWEEN` clause emitted for k-NN; runs derive it
  // from the loaded dataset via knn_time_tolerance_ms.
  std::int64_t knn_time_tolerance_ms = 500;
};

Dialect make_neutral_dialect();
Dialect make_generic_sql_dialect(const GenericSqlOptions& options = {});

// Registry with "neutral" and "generic-sql" registered.
DialectRegistry make_default_registry(const GenericSqlOptions& options = {});

// Inverse of the neutral emitter. Returns the instance with instance_id = 0;
// throws ParseError with the byte offset of the offending token.
QueryInstance parse_neutral(std::string_view text);

// Matched points / total points under the brute-force oracle. Read kinds
// only; throws UnsupportedError for writes.
double estimate_selectivity(const QueryInstance& instance, const Dataset& dataset);

}  // namespace stbench
