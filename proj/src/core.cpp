// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "stbench/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "stbench/error.hpp"

namespace stbench {

namespace {

bool finite_point(const Point2D& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

std::string trajectory_location(std::size_t trajectory_index, std::size_t point_index) {
  std::ostringstream out;
  out << "trajectory " << trajectory_index << ", point " << point_index;
  return out.str();
}

}  // namespace

std::size_t Dataset::total_points() const {
  std::size_t n = 0;
  for (const Trajectory& trajectory : trajectories) n += trajectory.points.size();
  return n;
}

const Trajectory* Dataset::find(ObjectId id) const {
  const auto it = std::lower_bound(
      trajectories.begin(), trajectories.end(), id,
      [](const Trajectory& trajectory, ObjectId key) { return trajectory.object_id < key; });
  if (it == trajectories.end() || it->object_id != id) return nullptr;
  return &*it;
}

std::vector<Violation> validate_dataset(const Dataset& d) {
  std::vector<Violation> violations;
  const auto add = [&violations](std::string code, std::string message) {
    violations.push_back(Violation{std::move(code), std::move(message)});
  };

  if (d.trajectories.empty()) {
    add("empty-dataset", "dataset has no trajectories");
    return violations;
  }

  bool finite = true;
  for (std::size_t ti = 0; ti < d.trajectories.size(); ++ti) {
    const Trajectory& trajectory = d.trajectories[ti];
    if (ti > 0) {
      const ObjectId prev = d.trajectories[ti - 1].object_id;
      if (trajectory.object_id == prev) {
        std::ostringstream out;
        out << "object_id " << trajectory.object_id << " appears more than once";
        add("duplicate-object-id", out.str());
      } else if (trajectory.object_id < prev) {
        std::ostringstream out;
        out << "trajectory " << ti << " (object_id " << trajectory.object_id
            << ") breaks ascending object_id order";
        add("unsorted-trajectories", out.str());
      }
    }
    if (trajectory.points.empty()) {
      std::ostringstream out;
      out << "trajectory " << ti << " (object_id " << trajectory.object_id
          << ") has no points";
      add("empty-trajectory", out.str());
      continue;
    }
    for (std::size_t pi = 0; pi < trajectory.points.size(); ++pi) {
      const TrajectoryPoint& point = trajectory.points[pi];
      if (point.object_id != trajectory.object_id) {
        std::ostringstream out;
        out << trajectory_location(ti, pi) << ": object_id " << point.object_id
            << " != trajectory object_id " << trajectory.object_id;
        add("object-id-mismatch", out.str());
      }
      if (!finite_point(point.pos)) {
        finite = false;
        add("non-finite-coordinate", trajectory_location(ti, pi) + ": coordinate is not finite");
      }
      if (point.t < 0) {
        std::ostringstream out;
        out << trajectory_location(ti, pi) << ": timestamp " << point.t << " is negative";
        add("negative-timestamp", out.str());
      }
      if (pi > 0 && point.t <= trajectory.points[pi - 1].t) {
        std::ostringstream out;
        out << trajectory_location(ti, pi) << ": timestamp " << point.t
            << " does not increase past " << trajectory.points[pi - 1].t;
        add("non-increasing-timestamp", out.str());
      }
    }
  }

  // Bounds are only comparable once every coordinate is a real number.
  const bool has_points = std::any_of(d.trajectories.begin(), d.trajectories.end(),
                                      [](const Trajectory& t) { return !t.points.empty(); });
  if (finite && has_points) {
    if (d.extent != compute_extent(d.trajectories))
      add("stale-extent", "extent does not equal the tight bounds of the points");
    if (d.time_span != compute_time_span(d.trajectories))
      add("stale-time-span", "time_span does not equal the tight bounds of the timestamps");
  }
  return violations;
}

DatasetSummary summarize(const Dataset& d) {
  const std::vector<Violation> violations = validate_dataset(d);
  if (!violations.empty()) {
    std::ostringstream out;
    out << "invalid dataset:";
    for (const Violation& v : violations) out << " [" << v.code << "] " << v.message << ";";
    throw ValidationError(out.str());
  }
  DatasetSummary summary;
  summary.object_count = d.trajectories.size();
  summary.total_points = d.total_points();
  summary.mean_trajectory_length =
      static_cast<double>(summary.total_points) / static_cast<double>(summary.object_count);
  summary.extent = d.extent;
  summary.time_span = d.time_span;
  return summary;
}

Region compute_extent(const std::vector<Trajectory>& trajectories) {
  Region extent;
  bool first = true;
  for (const Trajectory& trajectory : trajectories) {
    for (const TrajectoryPoint& point : trajectory.points) {
      if (first) {
        extent.min = extent.max = point.pos;
        first = false;
        continue;
      }
      extent.min.x = std::min(extent.min.x, point.pos.x);
      extent.min.y = std::min(extent.min.y, point.pos.y);
      extent.max.x = std::max(extent.max.x, point.pos.x);
      extent.max.y = std::max(extent.max.y, point.pos.y);
    }
  }
  return extent;
}

TimeInterval compute_time_span(const std::vector<Trajectory>& trajectories) {
  TimeInterval span;
  bool first = true;
  for (const Trajectory& trajectory : trajectories) {
    for (const TrajectoryPoint& point : trajectory.points) {
      if (first) {
        span.start = span.end = point.t;
        first = false;
        continue;
      }
      span.start = std::min(span.start, point.t);
      span.end = std::max(span.end, point.t);
    }
  }
  return span;
}

TimeStamp min_sample_gap_ms(const Dataset& d) {
  TimeStamp best = 0;
  for (const Trajectory& trajectory : d.trajectories) {
    for (std::size_t i = 1; i < trajectory.points.size(); ++i) {
      const TimeStamp gap = trajectory.points[i].t - trajectory.points[i - 1].t;
      if (gap > 0 && (best == 0 || gap < best)) best = gap;
    }
  }
  return best;
}

std::string format_double(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

std::string format_point(const Point2D& p) {
  return format_double(p.x) + "," + format_double(p.y);
}

}  // namespace stbench
