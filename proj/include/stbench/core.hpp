// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stbench {

using ObjectId = std::uint64_t;

// Milliseconds since the experiment epoch (t = 0). Valid values are >= 0;
// integer time keeps ordering invariants free of float comparison ambiguity.
using TimeStamp = std::int64_t;

// Planar position in abstract units. No geodesic interpretation anywhere in
// the suite; callers may read the units as meters, degrees, or anything else.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

struct TrajectoryPoint {
  ObjectId object_id = 0;
  TimeStamp t = 0;
  Point2D pos;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

// Time-ordered position samples of one object. Timestamps are strictly
// increasing and every point carries the trajectory's object_id.
struct Trajectory {
  ObjectId object_id = 0;
  std::vector<TrajectoryPoint> points;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Axis-aligned rectangle, inclusive on all sides.
struct Region {
  Point2D min;
  Point2D max;

  [[nodiscard]] bool contains(const Point2D& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  [[nodiscard]] bool intersects(const Region& other) const {
    return min.x <= other.max.x && other.min.x <= max.x && min.y <= other.max.y &&
           other.min.y <= max.y;
  }
  [[nodiscard]] double width() const { return max.x - min.x; }
  [[nodiscard]] double height() const { return max.y - min.y; }

  friend bool operator==(const Region&, const Region&) = default;
};

// Closed interval [start, end], inclusive on both ends.
struct TimeInterval {
  TimeStamp start = 0;
  TimeStamp end = 0;

  [[nodiscard]] bool contains(TimeStamp t) const { return t >= start && t <= end; }
  [[nodiscard]] bool intersects(const TimeInterval& other) const {
    return start <= other.end && other.start <= end;
  }
  [[nodiscard]] TimeStamp length() const { return end - start; }

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

// The unit of generated data: trajectories sorted by object_id with unique
// ids, plus the tight spatial and temporal bounds over all points.
struct Dataset {
  std::vector<Trajectory> trajectories;
  Region extent;
  TimeInterval time_span;

  [[nodiscard]] std::size_t total_points() const;
  [[nodiscard]] const Trajectory* find(ObjectId id) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct DatasetSummary {
  std::uint64_t object_count = 0;
  std::uint64_t total_points = 0;
  double mean_trajectory_length = 0.0;  // points per object
  Region extent;
  TimeInterval time_span;

  friend bool operator==(const DatasetSummary&, const DatasetSummary&) = default;
};

struct Violation {
  std::string code;     // stable identifier, e.g. "non-increasing-timestamp"
  std::string message;  // location and detail

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Reports every invariant violation with its location; empty iff the dataset
// is valid. Pure and idempotent.
std::vector<Violation> validate_dataset(const Dataset& d);

// Counts and tight bounds. Throws ValidationError listing the violations when
// the dataset is invalid.
DatasetSummary summarize(const Dataset& d);

// Tight bounds recomputed from the points. Undefined for zero points; callers
// guard with at least one point.
Region compute_extent(const std::vector<Trajectory>& trajectories);
TimeInterval compute_time_span(const std::vector<Trajectory>& trajectories);

// Smallest positive gap between consecutive samples within any trajectory;
// 0 when no trajectory has two points.
TimeStamp min_sample_gap_ms(const Dataset& d);

// Shortest-round-trip decimal formatting; the interchange and dialect
// grammars depend on this being byte-stable across platforms.
std::string format_double(double v);
std::string format_point(const Point2D& p);  // "x,y" diagnostic form

}  // namespace stbench
