// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "stbench/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "stbench/error.hpp"
#include "stbench/rng.hpp"

namespace stbench {

namespace {

constexpr std::string_view kHeader = "object_id,t,x,y";

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

Trajectory generate_trajectory(const DataGenConfig& cfg, std::uint32_t index) {
  SplitMix64 rng = substream(cfg.seed, index);
  std::uint32_t length = cfg.points_min;
  if (cfg.points_max > cfg.points_min) {
    length += static_cast<std::uint32_t>(
        rng.next_below(static_cast<std::uint64_t>(cfg.points_max - cfg.points_min) + 1));
  }

  Trajectory trajectory;
  trajectory.object_id = index;
  trajectory.points.reserve(length);

  const Region& region = cfg.region;
  Point2D pos{rng.next_in(region.min.x, region.max.x),
              rng.next_in(region.min.y, region.max.y)};
  trajectory.points.push_back(TrajectoryPoint{index, 0, pos});

  Point2D waypoint{rng.next_in(region.min.x, region.max.x),
                   rng.next_in(region.min.y, region.max.y)};
  double speed = rng.next_in(cfg.speed_min, cfg.speed_max);

  TimeStamp t = 0;
  for (std::uint32_t i = 1; i < length; ++i) {
    const double step = speed * (static_cast<double>(cfg.sample_interval_ms) / 1000.0);
    const double dx = waypoint.x - pos.x;
    const double dy = waypoint.y - pos.y;
    // std::sqrt is correctly rounded; std::hypot is not, and determinism
    // across libm versions matters more than overflow safety here.
    const double dist = std::sqrt(dx * dx + dy * dy);
    if (dist <= step) {
      pos = waypoint;
      waypoint = Point2D{rng.next_in(region.min.x, region.max.x),
                         rng.next_in(region.min.y, region.max.y)};
      speed = rng.next_in(cfg.speed_min, cfg.speed_max);
    } else {
      pos.x += dx / dist * step;
      pos.y += dy / dist * step;
    }
    pos.x = clamp(pos.x, region.min.x, region.max.x);
    pos.y = clamp(pos.y, region.min.y, region.max.y);
    t += cfg.sample_interval_ms;
    trajectory.points.push_back(TrajectoryPoint{index, t, pos});
  }
  return trajectory;
}

std::uint64_t parse_u64_field(std::string_view field, std::size_t line, const char* name) {
  std::uint64_t value = 0;
  const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    std::ostringstream out;
    out << "line " << line << ": field " << name << " is not an unsigned integer";
    throw ParseError(out.str());
  }
  return value;
}

std::int64_t parse_i64_field(std::string_view field, std::size_t line, const char* name) {
  std::int64_t value = 0;
  const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    std::ostringstream out;
    out << "line " << line << ": field " << name << " is not an integer";
    throw ParseError(out.str());
  }
  return value;
}

double parse_double_field(std::string_view field, std::size_t line, const char* name) {
  double value = 0.0;
  const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    std::ostringstream out;
    out << "line " << line << ": field " << name << " is not a number";
    throw ParseError(out.str());
  }
  return value;
}

}  // namespace

void validate_datagen_config(const DataGenConfig& cfg) {
  if (cfg.n_objects < 1) throw ConfigError("data.n_objects must be >= 1");
  if (cfg.points_min < 1) throw ConfigError("data.points_min must be >= 1");
  if (cfg.points_max < cfg.points_min)
    throw ConfigError("data.points_max must be >= data.points_min");
  if (!std::isfinite(cfg.region.min.x) || !std::isfinite(cfg.region.min.y) ||
      !std::isfinite(cfg.region.max.x) || !std::isfinite(cfg.region.max.y))
    throw ConfigError("data.region bounds must be finite");
  if (!(cfg.region.width() > 0.0) || !(cfg.region.height() > 0.0))
    throw ConfigError("data.region must have positive area");
  if (!std::isfinite(cfg.speed_min) || !std::isfinite(cfg.speed_max))
    throw ConfigError("data.speed bounds must be finite");
  if (!(cfg.speed_min > 0.0)) throw ConfigError("data.speed_min must be > 0");
  if (cfg.speed_max < cfg.speed_min)
    throw ConfigError("data.speed_max must be >= data.speed_min");
  if (cfg.sample_interval_ms < 1) throw ConfigError("data.sample_interval_ms must be >= 1");
}

Dataset generate_dataset(const DataGenConfig& cfg, unsigned threads) {
  validate_datagen_config(cfg);

  Dataset dataset;
  dataset.trajectories.resize(cfg.n_objects);

  const unsigned lanes =
      std::max(1u, std::min(threads, static_cast<unsigned>(cfg.n_objects)));
  if (lanes == 1) {
    for (std::uint32_t i = 0; i < cfg.n_objects; ++i)
      dataset.trajectories[i] = generate_trajectory(cfg, i);
  } else {
    // Objects have independent RNG substreams, so any partition of the index
    // space yields the same dataset.
    std::vector<std::thread> pool;
    pool.reserve(lanes);
    for (unsigned lane = 0; lane < lanes; ++lane) {
      pool.emplace_back([&cfg, &dataset, lane, lanes]() {
        for (std::uint32_t i = lane; i < cfg.n_objects; i += lanes)
          dataset.trajectories[i] = generate_trajectory(cfg, i);
      });
    }
    for (std::thread& worker : pool) worker.join();
  }

  dataset.extent = compute_extent(dataset.trajectories);
  dataset.time_span = compute_time_span(dataset.trajectories);
  return dataset;
}

std::size_t export_dataset(const Dataset& d, std::ostream& sink) {
  const std::vector<Violation> violations = validate_dataset(d);
  if (!violations.empty())
    throw ValidationError("refusing to export invalid dataset: [" + violations.front().code +
                          "] " + violations.front().message);

  std::string buffer;
  buffer.reserve(1 << 16);
  buffer.append(kHeader);
  buffer.push_back('\n');
  std::size_t bytes = 0;
  for (const Trajectory& trajectory : d.trajectories) {
    for (const TrajectoryPoint& point : trajectory.points) {
      buffer.append(std::to_string(point.object_id));
      buffer.push_back(',');
      buffer.append(std::to_string(point.t));
      buffer.push_back(',');
      buffer.append(format_double(point.pos.x));
      buffer.push_back(',');
      buffer.append(format_double(point.pos.y));
      buffer.push_back('\n');
      if (buffer.size() >= (1 << 16)) {
        sink.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        bytes += buffer.size();
        buffer.clear();
      }
    }
  }
  sink.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  bytes += buffer.size();
  sink.flush();
  if (!sink.good()) throw IoError("dataset export failed: stream write error");
  return bytes;
}

Dataset import_dataset(std::istream& source) {
  std::string line;
  if (!std::getline(source, line)) throw ParseError("line 1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw ParseError("line 1: expected header \"" + std::string(kHeader) + "\"");

  Dataset dataset;
  std::size_t line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);

    std::string_view fields[4];
    std::size_t field_count = 0;
    while (field_count < 4) {
      const std::size_t comma = view.find(',');
      if (comma == std::string_view::npos) {
        fields[field_count++] = view;
        view = {};
        break;
      }
      fields[field_count++] = view.substr(0, comma);
      view.remove_prefix(comma + 1);
    }
    if (field_count != 4 || !view.empty() || fields[3].find(',') != std::string_view::npos) {
      std::ostringstream out;
      out << "line " << line_no << ": expected 4 comma-separated fields";
      throw ParseError(out.str());
    }

    TrajectoryPoint point;
    point.object_id = parse_u64_field(fields[0], line_no, "object_id");
    point.t = parse_i64_field(fields[1], line_no, "t");
    point.pos.x = parse_double_field(fields[2], line_no, "x");
    point.pos.y = parse_double_field(fields[3], line_no, "y");

    if (point.t < 0) {
      std::ostringstream out;
      out << "line " << line_no << ": negative timestamp " << point.t;
      throw ValidationError(out.str());
    }
    if (!std::isfinite(point.pos.x) || !std::isfinite(point.pos.y)) {
      std::ostringstream out;
      out << "line " << line_no << ": non-finite coordinate";
      throw ValidationError(out.str());
    }

    if (dataset.trajectories.empty() ||
        dataset.trajectories.back().object_id != point.object_id) {
      if (!dataset.trajectories.empty() &&
          point.object_id < dataset.trajectories.back().object_id) {
        std::ostringstream out;
        out << "line " << line_no << ": object_id " << point.object_id
            << " breaks (object_id, t) sort order";
        throw ValidationError(out.str());
      }
      dataset.trajectories.push_back(Trajectory{point.object_id, {}});
    } else if (point.t <= dataset.trajectories.back().points.back().t) {
      std::ostringstream out;
      out << "line " << line_no << ": timestamp " << point.t
          << " breaks (object_id, t) sort order";
      throw ValidationError(out.str());
    }
    dataset.trajectories.back().points.push_back(point);
  }
  if (source.bad()) throw IoError("dataset import failed: stream read error");
  if (dataset.trajectories.empty()) throw ValidationError("dataset has no points");

  dataset.extent = compute_extent(dataset.trajectories);
  dataset.time_span = compute_time_span(dataset.trajectories);
  return dataset;
}

std::size_t export_dataset_file(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open()) throw IoError("cannot open " + path + " for writing");
  return export_dataset(d, out);
}

Dataset import_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError("cannot open " + path);
  return import_dataset(in);
}

}  // namespace stbench
