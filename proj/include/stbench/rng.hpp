// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstdint>

namespace stbench {

// splitmix64 (Steele/Lea/Flood reference constants). Chosen over std::mt19937
// because its output is bit-identical on every platform and seeding a new
// instance from a mixed value gives cheap independent substreams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi); requires lo <= hi. Rounding may touch hi exactly.
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Unbiased uniform integer in [0, bound); bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Independent generator for (seed, stream_id). The id goes through the full
// output mix before combining: seeding with root + id*gamma would make
// streams shifted windows of one master sequence, because gamma is also the
// per-draw state increment.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream_id) {
  SplitMix64 root(seed);
  SplitMix64 id_mix(stream_id);
  return SplitMix64(root.next() ^ id_mix.next());
}

}  // namespace stbench
