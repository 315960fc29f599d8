// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <charconv>
#include <cmath>
#include <limits>

#include "stbench/core.hpp"
#include "stbench/error.hpp"
#include "stbench/rng.hpp"
#include "support.hpp"

using namespace stbench;
using test::make_dataset;
using test::tp;

namespace {

bool has_code(const std::vector<Violation>& violations, const std::string& code) {
  for (const Violation& v : violations)
    if (v.code == code) return true;
  return false;
}

double parse_back(const std::string& text) {
  double value = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

}  // namespace

TEST_CASE("format_double is shortest round-trip text") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.5) == "1.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(100.0) == "100");
  for (const double v : {0.1, 1.0 / 3.0, 1e-12, 123456.789, 2.5e17, -7.25}) {
    CAPTURE(v);
    CHECK(parse_back(format_double(v)) == v);
  }
}

TEST_CASE("region containment and intersection are inclusive") {
  const Region r{{0.0, 0.0}, {1.0, 1.0}};
  CHECK(r.contains({0.0, 0.0}));
  CHECK(r.contains({1.0, 1.0}));
  CHECK(r.contains({0.5, 1.0}));
  CHECK_FALSE(r.contains({1.0 + 1e-9, 1.0}));
  CHECK(r.intersects({{1.0, 1.0}, {2.0, 2.0}}));  // single shared corner
  CHECK_FALSE(r.intersects({{1.1, 0.0}, {2.0, 1.0}}));
  CHECK(r.width() == 1.0);
  CHECK(r.height() == 1.0);
}

TEST_CASE("time interval is inclusive on both ends") {
  const TimeInterval i{5, 9};
  CHECK(i.contains(5));
  CHECK(i.contains(9));
  CHECK_FALSE(i.contains(4));
  CHECK(i.intersects({9, 20}));
  CHECK_FALSE(i.intersects({10, 20}));
  CHECK(i.length() == 4);
}

TEST_CASE("dataset lookup and point counting") {
  const Dataset d = test::tiny_dataset();
  CHECK(d.total_points() == 8);
  REQUIRE(d.find(7) != nullptr);
  CHECK(d.find(7)->points.size() == 4);
  CHECK(d.find(2) == nullptr);
}

TEST_CASE("validate_dataset accepts a well-formed dataset") {
  CHECK(validate_dataset(test::tiny_dataset()).empty());
}

TEST_CASE("validate_dataset reports every violation with its code") {
  SUBCASE("empty dataset") {
    CHECK(has_code(validate_dataset(Dataset{}), "empty-dataset"));
  }
  SUBCASE("duplicate object id") {
    Dataset d = make_dataset({{3, {tp(3, 0, 0, 0)}}, {3, {tp(3, 0, 1, 1)}}});
    CHECK(has_code(validate_dataset(d), "duplicate-object-id"));
  }
  SUBCASE("trajectories out of object order") {
    Dataset d = make_dataset({{9, {tp(9, 0, 0, 0)}}, {2, {tp(2, 0, 1, 1)}}});
    CHECK(has_code(validate_dataset(d), "unsorted-trajectories"));
  }
  SUBCASE("empty trajectory") {
    Dataset d;
    d.trajectories = {{1, {}}};
    CHECK(has_code(validate_dataset(d), "empty-trajectory"));
  }
  SUBCASE("point carries a different object id") {
    Dataset d = make_dataset({{1, {tp(2, 0, 0, 0)}}});
    CHECK(has_code(validate_dataset(d), "object-id-mismatch"));
  }
  SUBCASE("non-finite coordinate") {
    Dataset d = make_dataset({{1, {tp(1, 0, std::numeric_limits<double>::quiet_NaN(), 0)}}});
    CHECK(has_code(validate_dataset(d), "non-finite-coordinate"));
  }
  SUBCASE("negative timestamp") {
    Dataset d = make_dataset({{1, {tp(1, -5, 0, 0)}}});
    CHECK(has_code(validate_dataset(d), "negative-timestamp"));
  }
  SUBCASE("non-increasing timestamps") {
    Dataset d = make_dataset({{1, {tp(1, 10, 0, 0), tp(1, 10, 1, 1)}}});
    CHECK(has_code(validate_dataset(d), "non-increasing-timestamp"));
  }
  SUBCASE("stale extent") {
    Dataset d = make_dataset({{1, {tp(1, 0, 0, 0), tp(1, 1000, 5, 5)}}});
    d.extent.max = {4.0, 5.0};  // excludes the second point
    const auto violations = validate_dataset(d);
    CHECK(has_code(violations, "stale-extent"));
    CHECK(violations.size() == 1);
  }
  SUBCASE("stale time span") {
    Dataset d = make_dataset({{1, {tp(1, 0, 0, 0), tp(1, 1000, 5, 5)}}});
    d.time_span.end = 999;
    CHECK(has_code(validate_dataset(d), "stale-time-span"));
  }
}

TEST_CASE("validate_dataset is idempotent") {
  Dataset d = make_dataset({{3, {tp(3, 10, 0, 0), tp(3, 10, 1, 1)}}, {2, {tp(2, -1, 0, 0)}}});
  const auto first = validate_dataset(d);
  const auto second = validate_dataset(d);
  CHECK_FALSE(first.empty());
  CHECK(first == second);
}

TEST_CASE("summarize counts and mean length") {
  const Dataset d = make_dataset({
      {1, {tp(1, 0, 0.1, 0.2), tp(1, 1000, 0.3, 0.4), tp(1, 2000, 0.5, 0.6)}},
      {2, {tp(2, 0, 0.7, 0.8), tp(2, 1000, 0.9, 0.1), tp(2, 2000, 0.2, 0.3)}},
  });
  const DatasetSummary s = summarize(d);
  CHECK(s.object_count == 2);
  CHECK(s.total_points == 6);
  CHECK(s.mean_trajectory_length == 3.0);
}

TEST_CASE("summarize keeps degenerate tight bounds") {
  const Dataset d = make_dataset({{1, {tp(1, 7, 0.5, 0.5)}}});
  const DatasetSummary s = summarize(d);
  CHECK(s.extent == Region{{0.5, 0.5}, {0.5, 0.5}});
  CHECK(s.time_span == TimeInterval{7, 7});
}

TEST_CASE("summarize rejects invalid datasets and lists violations") {
  Dataset d = make_dataset({{1, {tp(1, -5, 0, 0)}}});
  CHECK_THROWS_WITH_AS(summarize(d), doctest::Contains("negative-timestamp"), ValidationError);
}

TEST_CASE("summary extent is tight: every side touches a point") {
  const Dataset d = test::tiny_dataset();
  const DatasetSummary s = summarize(d);
  bool min_x = false, max_x = false, min_y = false, max_y = false;
  bool min_t = false, max_t = false;
  for (const Trajectory& trajectory : d.trajectories) {
    for (const TrajectoryPoint& p : trajectory.points) {
      CHECK(s.extent.contains(p.pos));
      CHECK(s.time_span.contains(p.t));
      min_x |= p.pos.x == s.extent.min.x;
      max_x |= p.pos.x == s.extent.max.x;
      min_y |= p.pos.y == s.extent.min.y;
      max_y |= p.pos.y == s.extent.max.y;
      min_t |= p.t == s.time_span.start;
      max_t |= p.t == s.time_span.end;
    }
  }
  CHECK(min_x);
  CHECK(max_x);
  CHECK(min_y);
  CHECK(max_y);
  CHECK(min_t);
  CHECK(max_t);
}

TEST_CASE("min_sample_gap_ms finds the smallest intra-trajectory gap") {
  CHECK(min_sample_gap_ms(test::tiny_dataset()) == 1000);
  const Dataset mixed = make_dataset({
      {1, {tp(1, 0, 0, 0), tp(1, 500, 1, 1), tp(1, 2500, 2, 2)}},
      {2, {tp(2, 0, 3, 3)}},
  });
  CHECK(min_sample_gap_ms(mixed) == 500);
  const Dataset singletons = make_dataset({{1, {tp(1, 0, 0, 0)}}, {2, {tp(2, 9, 1, 1)}}});
  CHECK(min_sample_gap_ms(singletons) == 0);
}

TEST_CASE("format_point uses the interchange number form") {
  CHECK(format_point({1.5, 2.5}) == "1.5,2.5");
  CHECK(format_point({0.0, -3.0}) == "0,-3");
}

TEST_CASE("rng substreams are not shifted windows of one sequence") {
  // Seeding child streams with id multiples of the state increment would
  // make substream(s, a) and substream(s, b) the same sequence offset by
  // b - a; objects would then trace each other's waypoints.
  for (const std::uint64_t gap : {1ull, 3ull, 7ull}) {
    SplitMix64 early = substream(42, 0);
    SplitMix64 late = substream(42, gap);
    for (std::uint64_t i = 0; i < gap; ++i) early.next();
    int collisions = 0;
    for (int i = 0; i < 64; ++i) collisions += early.next() == late.next() ? 1 : 0;
    CHECK(collisions == 0);
  }
}

TEST_CASE("rng substreams are deterministic per (seed, id)") {
  SplitMix64 a = substream(7, 9);
  SplitMix64 b = substream(7, 9);
  for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
  CHECK(substream(7, 10).next() != substream(7, 9).next());
  CHECK(substream(8, 9).next() != substream(7, 9).next());
}
