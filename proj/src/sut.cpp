// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "stbench/sut.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "stbench/error.hpp"

namespace stbench {

void validate_index_spec(const IndexSpec& spec) {
  if (spec.kind == IndexSpec::Kind::none) return;
  if (!std::isfinite(spec.cell_size) || !(spec.cell_size > 0.0))
    throw ConfigError("sut.index.cell_size must be > 0");
  if (spec.time_bucket_ms < 1) throw ConfigError("sut.index.time_bucket_ms must be >= 1");
}

const char* to_string(IndexSpec::Kind kind) {
  switch (kind) {
    case IndexSpec::Kind::none:
      return "none";
    case IndexSpec::Kind::grid:
      return "grid";
  }
  return "?";
}

std::optional<IndexSpec::Kind> index_kind_from_string(std::string_view name) {
  if (name == "none") return IndexSpec::Kind::none;
  if (name == "grid") return IndexSpec::Kind::grid;
  return std::nullopt;
}

void canonicalize_rows(std::vector<TrajectoryPoint>& rows) {
  std::sort(rows.begin(), rows.end(), [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
    if (a.object_id != b.object_id) return a.object_id < b.object_id;
    if (a.t != b.t) return a.t < b.t;
    if (a.pos.x != b.pos.x) return a.pos.x < b.pos.x;
    return a.pos.y < b.pos.y;
  });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

namespace {

// Shared k-NN candidate ordering: squared Euclidean distance with
// (object_id, t) tie-break, the total order the oracle and the store agree on.
struct KnnCandidate {
  double d2 = 0.0;
  TrajectoryPoint point;
};

bool knn_less(const KnnCandidate& a, const KnnCandidate& b) {
  if (a.d2 != b.d2) return a.d2 < b.d2;
  if (a.point.object_id != b.point.object_id) return a.point.object_id < b.point.object_id;
  return a.point.t < b.point.t;
}

double squared_distance(const Point2D& p, const Point2D& center) {
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  return dx * dx + dy * dy;
}

void require_valid_read(const QueryInstance& instance) {
  if (is_write_kind(instance.kind))
    throw UnsupportedError(std::string("cannot evaluate write kind ") +
                           to_string(instance.kind) + " as a read");
  const std::vector<Violation> violations = validate_instance(instance);
  if (!violations.empty())
    throw ValidationError("invalid query instance: [" + violations.front().code + "] " +
                          violations.front().message);
}

}  // namespace

QueryResult bruteforce_eval(const QueryInstance& instance, const Dataset& dataset) {
  require_valid_read(instance);

  QueryResult result;
  result.kind = instance.kind;

  switch (instance.kind) {
    case QueryKind::SpatialRange:
      for (const Trajectory& trajectory : dataset.trajectories)
        for (const TrajectoryPoint& point : trajectory.points)
          if (instance.region->contains(point.pos)) result.rows.push_back(point);
      break;
    case QueryKind::TemporalRange:
      for (const Trajectory& trajectory : dataset.trajectories)
        for (const TrajectoryPoint& point : trajectory.points)
          if (instance.interval->contains(point.t)) result.rows.push_back(point);
      break;
    case QueryKind::SpatioTemporalRange:
      for (const Trajectory& trajectory : dataset.trajectories)
        for (const TrajectoryPoint& point : trajectory.points)
          if (instance.region->contains(point.pos) && instance.interval->contains(point.t))
            result.rows.push_back(point);
      break;
    case QueryKind::ObjectTrajectory:
      for (const Trajectory& trajectory : dataset.trajectories)
        for (const TrajectoryPoint& point : trajectory.points)
          if (point.object_id == *instance.object_id && instance.interval->contains(point.t))
            result.rows.push_back(point);
      break;
    case QueryKind::KNearestNeighbors: {
      const TimeStamp tolerance = knn_time_tolerance_ms(dataset);
      std::vector<KnnCandidate> candidates;
      for (const Trajectory& trajectory : dataset.trajectories)
        for (const TrajectoryPoint& point : trajectory.points)
          if (point.t >= *instance.at_time - tolerance && point.t <= *instance.at_time + tolerance)
            candidates.push_back(KnnCandidate{squared_distance(point.pos, *instance.center), point});
      std::sort(candidates.begin(), candidates.end(), knn_less);
      const std::size_t take = std::min<std::size_t>(candidates.size(), *instance.k);
      for (std::size_t i = 0; i < take; ++i) result.rows.push_back(candidates[i].point);
      break;
    }
    case QueryKind::AppendPoint:
      break;  // unreachable, rejected above
  }
  canonicalize_rows(result.rows);
  return result;
}

namespace {

struct CellKey {
  std::int64_t cx = 0;
  std::int64_t cy = 0;
  std::int64_t ct = 0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& key) const {
    auto mix = [](std::uint64_t z) {
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    std::uint64_t h = mix(static_cast<std::uint64_t>(key.cx));
    h = mix(h ^ static_cast<std::uint64_t>(key.cy));
    h = mix(h ^ static_cast<std::uint64_t>(key.ct));
    return static_cast<std::size_t>(h);
  }
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t spatial_cell(double v, double cell_size) {
  return static_cast<std::int64_t>(std::floor(v / cell_size));
}

struct ObjectSpan {
  ObjectId id = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;  // one past the last point
};

}  // namespace

// Immutable contents plus the index built over them. Writes publish a fresh
// snapshot; readers keep using the one they loaded.
struct EmbeddedStore::Snapshot {
  std::vector<TrajectoryPoint> points;  // sorted by (object_id, t)
  std::vector<ObjectSpan> objects;      // sorted by id
  Region extent;
  TimeInterval time_span;
  TimeStamp min_gap_ms = 0;

  IndexSpec index;
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash> cells;
  std::int64_t cx_min = 0, cx_max = -1;  // cell bounds; empty until indexed
  std::int64_t cy_min = 0, cy_max = -1;
  std::int64_t ct_min = 0, ct_max = -1;

  [[nodiscard]] TimeStamp knn_tolerance() const {
    if (min_gap_ms > 0) return (min_gap_ms + 1) / 2;
    return time_span.length();
  }

  void rebuild_index() {
    cells.clear();
    cx_min = cy_min = ct_min = 0;
    cx_max = cy_max = ct_max = -1;
    if (index.kind != IndexSpec::Kind::grid) return;
    bool first = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const TrajectoryPoint& p = points[i];
      const CellKey key{spatial_cell(p.pos.x, index.cell_size),
                        spatial_cell(p.pos.y, index.cell_size),
                        floor_div(p.t, index.time_bucket_ms)};
      cells[key].push_back(static_cast<std::uint32_t>(i));
      if (first) {
        cx_min = cx_max = key.cx;
        cy_min = cy_max = key.cy;
        ct_min = ct_max = key.ct;
        first = false;
      } else {
        cx_min = std::min(cx_min, key.cx);
        cx_max = std::max(cx_max, key.cx);
        cy_min = std::min(cy_min, key.cy);
        cy_max = std::max(cy_max, key.cy);
        ct_min = std::min(ct_min, key.ct);
        ct_max = std::max(ct_max, key.ct);
      }
    }
  }

  [[nodiscard]] const ObjectSpan* find_object(ObjectId id) const {
    const auto it = std::lower_bound(
        objects.begin(), objects.end(), id,
        [](const ObjectSpan& span, ObjectId key) { return span.id < key; });
    if (it == objects.end() || it->id != id) return nullptr;
    return &*it;
  }
};

EmbeddedStore::EmbeddedStore() = default;
EmbeddedStore::~EmbeddedStore() = default;

std::shared_ptr<const EmbeddedStore::Snapshot> EmbeddedStore::load_snapshot() const {
  return std::atomic_load_explicit(&snapshot_, std::memory_order_acquire);
}

void EmbeddedStore::prepare() {
  State expected = State::created;
  if (!state_.compare_exchange_strong(expected, State::prepared))
    throw StateError("embedded store: prepare called twice or after teardown");
}

void EmbeddedStore::bulk_load(const Dataset& dataset) {
  const State state = state_.load();
  if (state != State::prepared && state != State::loaded)
    throw StateError("embedded store: bulk_load requires a prepared store");
  const std::vector<Violation> violations = validate_dataset(dataset);
  if (!violations.empty())
    throw ValidationError("embedded store: refusing to load invalid dataset: [" +
                          violations.front().code + "] " + violations.front().message);

  auto snapshot = std::make_shared<Snapshot>();
  snapshot->points.reserve(dataset.total_points());
  for (const Trajectory& trajectory : dataset.trajectories) {
    const std::uint64_t begin = snapshot->points.size();
    for (const TrajectoryPoint& point : trajectory.points) snapshot->points.push_back(point);
    snapshot->objects.push_back(
        ObjectSpan{trajectory.object_id, begin, snapshot->points.size()});
  }
  snapshot->extent = dataset.extent;
  snapshot->time_span = dataset.time_span;
  snapshot->min_gap_ms = min_sample_gap_ms(dataset);

  std::lock_guard<std::mutex> lock(write_mutex_);
  const auto old = load_snapshot();
  if (old) snapshot->index = old->index;
  snapshot->rebuild_index();
  std::atomic_store_explicit(&snapshot_, std::shared_ptr<const Snapshot>(std::move(snapshot)),
                             std::memory_order_release);
  state_.store(State::loaded);
}

void EmbeddedStore::build_index(const IndexSpec& spec) {
  validate_index_spec(spec);
  if (state_.load() != State::loaded)
    throw StateError("embedded store: build_index requires loaded contents");

  std::lock_guard<std::mutex> lock(write_mutex_);
  const auto old = load_snapshot();
  auto snapshot = std::make_shared<Snapshot>(*old);
  snapshot->index = spec;
  snapshot->rebuild_index();
  std::atomic_store_explicit(&snapshot_, std::shared_ptr<const Snapshot>(std::move(snapshot)),
                             std::memory_order_release);
}

QueryResult EmbeddedStore::execute(const QueryInstance& instance) {
  if (state_.load() != State::loaded)
    throw StateError("embedded store: execute requires loaded contents");
  if (instance.kind == QueryKind::AppendPoint) return append_point(instance);

  require_valid_read(instance);
  const auto snapshot = load_snapshot();
  std::uint64_t rows_scanned = 0;
  std::uint64_t cells_visited = 0;

  QueryResult result;
  result.kind = instance.kind;

  const bool gridded = snapshot->index.kind == IndexSpec::Kind::grid;
  const double cell_size = snapshot->index.cell_size;

  // Looks up one cell and filters its points through `match`.
  const auto scan_cell = [&](const CellKey& key, auto&& match) {
    ++cells_visited;
    const auto it = snapshot->cells.find(key);
    if (it == snapshot->cells.end()) return;
    for (const std::uint32_t index : it->second) {
      ++rows_scanned;
      const TrajectoryPoint& point = snapshot->points[index];
      match(point);
    }
  };

  switch (instance.kind) {
    case QueryKind::SpatialRange:
    case QueryKind::SpatioTemporalRange: {
      const Region& region = *instance.region;
      TimeInterval window = snapshot->time_span;
      if (instance.kind == QueryKind::SpatioTemporalRange) window = *instance.interval;
      const auto matches = [&](const TrajectoryPoint& point) {
        if (region.contains(point.pos) &&
            (instance.kind == QueryKind::SpatialRange || instance.interval->contains(point.t)))
          result.rows.push_back(point);
      };
      if (gridded && !snapshot->points.empty()) {
        const std::int64_t cx_lo =
            std::max(spatial_cell(region.min.x, cell_size), snapshot->cx_min);
        const std::int64_t cx_hi =
            std::min(spatial_cell(region.max.x, cell_size), snapshot->cx_max);
        const std::int64_t cy_lo =
            std::max(spatial_cell(region.min.y, cell_size), snapshot->cy_min);
        const std::int64_t cy_hi =
            std::min(spatial_cell(region.max.y, cell_size), snapshot->cy_max);
        const std::int64_t ct_lo =
            std::max(floor_div(window.start, snapshot->index.time_bucket_ms), snapshot->ct_min);
        const std::int64_t ct_hi =
            std::min(floor_div(window.end, snapshot->index.time_bucket_ms), snapshot->ct_max);
        for (std::int64_t cx = cx_lo; cx <= cx_hi; ++cx)
          for (std::int64_t cy = cy_lo; cy <= cy_hi; ++cy)
            for (std::int64_t ct = ct_lo; ct <= ct_hi; ++ct)
              scan_cell(CellKey{cx, cy, ct}, matches);
      } else {
        for (const TrajectoryPoint& point : snapshot->points) {
          ++rows_scanned;
          matches(point);
        }
      }
      break;
    }
    case QueryKind::TemporalRange: {
      // Cells partition space first, so a pure time window degenerates to a
      // scan either way; the flat pass touches each point exactly once.
      for (const TrajectoryPoint& point : snapshot->points) {
        ++rows_scanned;
        if (instance.interval->contains(point.t)) result.rows.push_back(point);
      }
      break;
    }
    case QueryKind::ObjectTrajectory: {
      const ObjectSpan* span = snapshot->find_object(*instance.object_id);
      if (span != nullptr) {
        const auto begin = snapshot->points.begin() + static_cast<std::ptrdiff_t>(span->begin);
        const auto end = snapshot->points.begin() + static_cast<std::ptrdiff_t>(span->end);
        const auto lo = std::lower_bound(begin, end, instance.interval->start,
                                         [](const TrajectoryPoint& point, TimeStamp t) {
                                           return point.t < t;
                                         });
        const auto hi = std::upper_bound(lo, end, instance.interval->end,
                                         [](TimeStamp t, const TrajectoryPoint& point) {
                                           return t < point.t;
                                         });
        rows_scanned += static_cast<std::uint64_t>(std::distance(lo, hi));
        result.rows.insert(result.rows.end(), lo, hi);
      }
      break;
    }
    case QueryKind::KNearestNeighbors: {
      const TimeStamp tolerance = snapshot->knn_tolerance();
      const TimeStamp t_lo = *instance.at_time - tolerance;
      const TimeStamp t_hi = *instance.at_time + tolerance;
      std::vector<KnnCandidate> candidates;
      if (gridded && !snapshot->points.empty()) {
        const std::int64_t cx0 = spatial_cell(instance.center->x, cell_size);
        const std::int64_t cy0 = spatial_cell(instance.center->y, cell_size);
        const std::int64_t ct_lo =
            std::max(floor_div(t_lo, snapshot->index.time_bucket_ms), snapshot->ct_min);
        const std::int64_t ct_hi =
            std::min(floor_div(t_hi, snapshot->index.time_bucket_ms), snapshot->ct_max);
        const std::int64_t ring_limit = std::max(
            std::max(std::abs(cx0 - snapshot->cx_min), std::abs(cx0 - snapshot->cx_max)),
            std::max(std::abs(cy0 - snapshot->cy_min), std::abs(cy0 - snapshot->cy_max)));
        const auto collect = [&](const TrajectoryPoint& point) {
          if (point.t >= t_lo && point.t <= t_hi)
            candidates.push_back(
                KnnCandidate{squared_distance(point.pos, *instance.center), point});
        };
        const std::uint32_t k = *instance.k;
        for (std::int64_t ring = 0; ring <= ring_limit; ++ring) {
          for (std::int64_t ct = ct_lo; ct <= ct_hi; ++ct) {
            if (ring == 0) {
              scan_cell(CellKey{cx0, cy0, ct}, collect);
              continue;
            }
            for (std::int64_t dx = -ring; dx <= ring; ++dx) {
              scan_cell(CellKey{cx0 + dx, cy0 - ring, ct}, collect);
              scan_cell(CellKey{cx0 + dx, cy0 + ring, ct}, collect);
            }
            for (std::int64_t dy = -ring + 1; dy <= ring - 1; ++dy) {
              scan_cell(CellKey{cx0 - ring, cy0 + dy, ct}, collect);
              scan_cell(CellKey{cx0 + ring, cy0 + dy, ct}, collect);
            }
          }
          if (candidates.size() >= k && ring >= 1) {
            std::nth_element(candidates.begin(),
                             candidates.begin() + static_cast<std::ptrdiff_t>(k - 1),
                             candidates.end(), knn_less);
            // Unvisited cells lie on rings > `ring`, geometrically at least
            // ring*cell away; one cell of slack absorbs boundary rounding in
            // the cell assignment and any distance ties across rings.
            const double safe = static_cast<double>(ring - 1) * cell_size;
            if (candidates[k - 1].d2 < safe * safe) break;
          }
        }
      } else {
        for (const TrajectoryPoint& point : snapshot->points) {
          ++rows_scanned;
          if (point.t >= t_lo && point.t <= t_hi)
            candidates.push_back(
                KnnCandidate{squared_distance(point.pos, *instance.center), point});
        }
      }
      std::sort(candidates.begin(), candidates.end(), knn_less);
      const std::size_t take = std::min<std::size_t>(candidates.size(), *instance.k);
      for (std::size_t i = 0; i < take; ++i) result.rows.push_back(candidates[i].point);
      break;
    }
    case QueryKind::AppendPoint:
      break;  // handled above
  }

  canonicalize_rows(result.rows);
  rows_scanned_.fetch_add(rows_scanned, std::memory_order_relaxed);
  cells_visited_.fetch_add(cells_visited, std::memory_order_relaxed);
  return result;
}

QueryResult EmbeddedStore::append_point(const QueryInstance& instance) {
  const std::vector<Violation> violations = validate_instance(instance);
  if (!violations.empty())
    throw ValidationError("invalid query instance: [" + violations.front().code + "] " +
                          violations.front().message);
  const TrajectoryPoint& point = *instance.new_point;

  QueryResult result;
  result.kind = QueryKind::AppendPoint;

  std::lock_guard<std::mutex> lock(write_mutex_);
  const auto old = load_snapshot();
  const ObjectSpan* span = old->find_object(point.object_id);
  if (span != nullptr && point.t <= old->points[span->end - 1].t) {
    result.accepted = false;  // would break strict timestamp increase
    return result;
  }

  auto snapshot = std::make_shared<Snapshot>();
  snapshot->index = old->index;
  snapshot->points.reserve(old->points.size() + 1);
  snapshot->objects.reserve(old->objects.size() + 1);

  // Rebuild the flat array with the point slotted into its object's span;
  // object order (and thus validity) is preserved by construction.
  bool inserted = false;
  for (const ObjectSpan& existing : old->objects) {
    if (!inserted && point.object_id < existing.id) {
      const std::uint64_t begin = snapshot->points.size();
      snapshot->points.push_back(point);
      snapshot->objects.push_back(ObjectSpan{point.object_id, begin, begin + 1});
      inserted = true;
    }
    const std::uint64_t begin = snapshot->points.size();
    for (std::uint64_t i = existing.begin; i < existing.end; ++i)
      snapshot->points.push_back(old->points[i]);
    if (existing.id == point.object_id) {
      snapshot->points.push_back(point);
      inserted = true;
    }
    snapshot->objects.push_back(
        ObjectSpan{existing.id, begin, snapshot->points.size()});
  }
  if (!inserted) {
    const std::uint64_t begin = snapshot->points.size();
    snapshot->points.push_back(point);
    snapshot->objects.push_back(ObjectSpan{point.object_id, begin, begin + 1});
  }

  snapshot->extent = old->extent;
  snapshot->extent.min.x = std::min(snapshot->extent.min.x, point.pos.x);
  snapshot->extent.min.y = std::min(snapshot->extent.min.y, point.pos.y);
  snapshot->extent.max.x = std::max(snapshot->extent.max.x, point.pos.x);
  snapshot->extent.max.y = std::max(snapshot->extent.max.y, point.pos.y);
  snapshot->time_span = old->time_span;
  snapshot->time_span.start = std::min(snapshot->time_span.start, point.t);
  snapshot->time_span.end = std::max(snapshot->time_span.end, point.t);
  snapshot->min_gap_ms = old->min_gap_ms;
  if (span != nullptr) {
    const TimeStamp gap = point.t - old->points[span->end - 1].t;
    if (gap > 0 && (snapshot->min_gap_ms == 0 || gap < snapshot->min_gap_ms))
      snapshot->min_gap_ms = gap;
  }
  snapshot->rebuild_index();

  std::atomic_store_explicit(&snapshot_, std::shared_ptr<const Snapshot>(std::move(snapshot)),
                             std::memory_order_release);
  result.accepted = true;
  return result;
}

QueryResult EmbeddedStore::execute_text(const QueryText& text) {
  if (text.dialect != dialect())
    throw UnsupportedError("embedded store speaks dialect \"" + dialect() +
                           "\", got \"" + text.dialect + "\"");
  return execute(parse_neutral(text.text));
}

ResourceSample EmbeddedStore::resource_snapshot() {
  ResourceSample sample;
  sample.rows_scanned = rows_scanned_.load(std::memory_order_relaxed);
  sample.cells_visited = cells_visited_.load(std::memory_order_relaxed);
  const auto snapshot = load_snapshot();
  if (snapshot) {
    sample.points_stored = snapshot->points.size();
    std::uint64_t bytes = snapshot->points.size() * sizeof(TrajectoryPoint) +
                          snapshot->objects.size() * sizeof(ObjectSpan);
    for (const auto& [key, cell] : snapshot->cells)
      bytes += sizeof(key) + sizeof(cell) + cell.size() * sizeof(std::uint32_t);
    sample.bytes_estimated = bytes;
  }
  return sample;
}

void EmbeddedStore::teardown() {
  state_.store(State::torn_down);
  std::lock_guard<std::mutex> lock(write_mutex_);
  std::atomic_store_explicit(&snapshot_, std::shared_ptr<const Snapshot>(),
                             std::memory_order_release);
}

Dataset EmbeddedStore::snapshot_dataset() const {
  const auto snapshot = load_snapshot();
  if (!snapshot) throw StateError("embedded store: no contents loaded");
  Dataset dataset;
  dataset.trajectories.reserve(snapshot->objects.size());
  for (const ObjectSpan& span : snapshot->objects) {
    Trajectory trajectory;
    trajectory.object_id = span.id;
    trajectory.points.assign(snapshot->points.begin() + static_cast<std::ptrdiff_t>(span.begin),
                             snapshot->points.begin() + static_cast<std::ptrdiff_t>(span.end));
    dataset.trajectories.push_back(std::move(trajectory));
  }
  dataset.extent = snapshot->extent;
  dataset.time_span = snapshot->time_span;
  return dataset;
}

void AdapterRegistry::register_adapter(std::string name, AdapterFactory factory) {
  if (name.empty()) throw ConfigError("adapter name must not be empty");
  if (!factory) throw ConfigError("adapter " + name + " has no factory");
  const auto [it, inserted] = factories_.emplace(std::move(name), std::move(factory));
  if (!inserted) throw ConfigError("adapter " + it->first + " is already registered");
}

bool AdapterRegistry::has(std::string_view name) const {
  return factories_.find(name) != factories_.end();
}

std::vector<std::string> AdapterRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(factories_.size());
  for (const auto& [name, factory] : factories_) out.push_back(name);
  return out;
}

std::unique_ptr<SutAdapter> AdapterRegistry::make(std::string_view name,
                                                  const nlohmann::json& options) const {
  const auto it = factories_.find(name);
  if (it == factories_.end()) {
    std::ostringstream out;
    out << "unknown adapter \"" << name << "\"; registered:";
    for (const std::string& known : names()) out << " " << known;
    throw ConfigError(out.str());
  }
  return it->second(options);
}

AdapterRegistry make_default_adapter_registry() {
  AdapterRegistry registry;
  registry.register_adapter("embedded", [](const nlohmann::json& options) {
    if (!options.is_null() && !(options.is_object() && options.empty()))
      throw ConfigError("embedded adapter takes no options");
    return std::make_unique<EmbeddedStore>();
  });
  return registry;
}

std::unique_ptr<SutAdapter> adapter_for(std::string_view name, const nlohmann::json& options,
                                        const AdapterRegistry& registry) {
  return registry.make(name, options);
}

}  // namespace stbench
