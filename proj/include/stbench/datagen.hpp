// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "stbench/core.hpp"

namespace stbench {

// Generator knobs: scale (object count, trajectory length), extent, movement
// speed range, and sampling cadence.
struct DataGenConfig {
  std::uint64_t seed = 0;
  std::uint32_t n_objects = 1;
  // Fixed trajectory length when points_min == points_max, otherwise uniform
  // integer length in [points_min, points_max].
  std::uint32_t points_min = 1;
  std::uint32_t points_max = 1;
  Region region;
  double speed_min = 1.0;  // units per second, 0 < speed_min <= speed_max
  double speed_max = 1.0;
  std::int64_t sample_interval_ms = 1000;

  friend bool operator==(const DataGenConfig&, const DataGenConfig&) = default;
};

// Throws ConfigError naming the offending field.
void validate_datagen_config(const DataGenConfig& cfg);

// Random-waypoint movement over independent per-object RNG substreams.
// The result is a pure function of cfg: bit-identical across invocations,
// platforms, and values of `threads`.
Dataset generate_dataset(const DataGenConfig& cfg, unsigned threads = 1);

// Interchange format shared by the generator, SUT loaders, and the oracle:
// header line `object_id,t,x,y`, then one decimal-text point per line,
// sorted by (object_id, t).
std::size_t export_dataset(const Dataset& d, std::ostream& sink);
Dataset import_dataset(std::istream& source);

std::size_t export_dataset_file(const Dataset& d, const std::string& path);
Dataset import_dataset_file(const std::string& path);

}  // namespace stbench
