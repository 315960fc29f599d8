// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "stbench/query.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "stbench/error.hpp"
#include "stbench/rng.hpp"
#include "stbench/sut.hpp"

namespace stbench {

namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += names[i];
  }
  return out;
}

std::string template_field_error(std::size_t index, const char* field, const char* detail) {
  std::ostringstream out;
  out << "queries.templates[" << index << "]." << field << " " << detail;
  return out.str();
}

}  // namespace

const char* to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::SpatialRange:
      return "SpatialRange";
    case QueryKind::TemporalRange:
      return "TemporalRange";
    case QueryKind::SpatioTemporalRange:
      return "SpatioTemporalRange";
    case QueryKind::KNearestNeighbors:
      return "KNearestNeighbors";
    case QueryKind::ObjectTrajectory:
      return "ObjectTrajectory";
    case QueryKind::AppendPoint:
      return "AppendPoint";
  }
  return "?";
}

std::optional<QueryKind> query_kind_from_string(std::string_view name) {
  if (name == "SpatialRange") return QueryKind::SpatialRange;
  if (name == "TemporalRange") return QueryKind::TemporalRange;
  if (name == "SpatioTemporalRange") return QueryKind::SpatioTemporalRange;
  if (name == "KNearestNeighbors") return QueryKind::KNearestNeighbors;
  if (name == "ObjectTrajectory") return QueryKind::ObjectTrajectory;
  if (name == "AppendPoint") return QueryKind::AppendPoint;
  return std::nullopt;
}

bool is_write_kind(QueryKind kind) { return kind == QueryKind::AppendPoint; }

void validate_templates(const std::vector<QueryTemplate>& templates) {
  if (templates.empty()) throw ConfigError("queries.templates must not be empty");

  double weight_sum = 0.0;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const QueryTemplate& t = templates[i];
    if (!std::isfinite(t.weight) || t.weight < 0.0)
      throw ConfigError(template_field_error(i, "weight", "must be a finite value >= 0"));
    weight_sum += t.weight;

    const bool spatial_kind =
        t.kind == QueryKind::SpatialRange || t.kind == QueryKind::SpatioTemporalRange;
    const bool temporal_required =
        t.kind == QueryKind::TemporalRange || t.kind == QueryKind::SpatioTemporalRange;
    const bool temporal_allowed = temporal_required || t.kind == QueryKind::ObjectTrajectory;
    const bool knn = t.kind == QueryKind::KNearestNeighbors;
    const bool anchorable = spatial_kind || temporal_required || knn;

    if (spatial_kind) {
      if (!t.spatial_fraction)
        throw ConfigError(template_field_error(i, "spatial_fraction", "is required"));
      if (!std::isfinite(*t.spatial_fraction) || *t.spatial_fraction <= 0.0 ||
          *t.spatial_fraction > 1.0)
        throw ConfigError(template_field_error(i, "spatial_fraction", "must be in (0,1]"));
    } else if (t.spatial_fraction) {
      throw ConfigError(template_field_error(i, "spatial_fraction", "does not apply to this kind"));
    }

    if (t.temporal_fraction) {
      if (!temporal_allowed)
        throw ConfigError(
            template_field_error(i, "temporal_fraction", "does not apply to this kind"));
      if (!std::isfinite(*t.temporal_fraction) || *t.temporal_fraction <= 0.0 ||
          *t.temporal_fraction > 1.0)
        throw ConfigError(template_field_error(i, "temporal_fraction", "must be in (0,1]"));
    } else if (temporal_required) {
      throw ConfigError(template_field_error(i, "temporal_fraction", "is required"));
    }

    if (knn) {
      if (!t.k) throw ConfigError(template_field_error(i, "k", "is required"));
      if (*t.k < 1) throw ConfigError(template_field_error(i, "k", "must be >= 1"));
    } else if (t.k) {
      throw ConfigError(template_field_error(i, "k", "does not apply to this kind"));
    }

    if (t.anchored && !anchorable)
      throw ConfigError(template_field_error(i, "anchored", "does not apply to this kind"));
  }
  if (!(weight_sum > 0.0)) throw ConfigError("queries.templates weights must not all be zero");
}

bool QueryInstance::equivalent_to(const QueryInstance& other) const {
  QueryInstance a = *this;
  QueryInstance b = other;
  a.instance_id = 0;
  b.instance_id = 0;
  return a == b;
}

std::vector<Violation> validate_instance(const QueryInstance& instance) {
  std::vector<Violation> violations;
  const auto add = [&violations](std::string code, std::string message) {
    violations.push_back(Violation{std::move(code), std::move(message)});
  };
  const auto check = [&](bool wanted, bool present, const char* field) {
    if (wanted && !present)
      add("missing-parameter",
          std::string(field) + " is required for " + to_string(instance.kind));
    else if (!wanted && present)
      add("extra-parameter",
          std::string(field) + " is not a parameter of " + to_string(instance.kind));
  };

  const bool wants_region =
      instance.kind == QueryKind::SpatialRange || instance.kind == QueryKind::SpatioTemporalRange;
  const bool wants_interval = instance.kind == QueryKind::TemporalRange ||
                              instance.kind == QueryKind::SpatioTemporalRange ||
                              instance.kind == QueryKind::ObjectTrajectory;
  const bool knn = instance.kind == QueryKind::KNearestNeighbors;
  const bool traj = instance.kind == QueryKind::ObjectTrajectory;
  const bool append = instance.kind == QueryKind::AppendPoint;

  check(wants_region, instance.region.has_value(), "region");
  check(wants_interval, instance.interval.has_value(), "interval");
  check(knn, instance.center.has_value(), "center");
  check(knn, instance.at_time.has_value(), "at_time");
  check(knn, instance.k.has_value(), "k");
  check(traj, instance.object_id.has_value(), "object_id");
  check(append, instance.new_point.has_value(), "new_point");

  if (instance.region) {
    const Region& r = *instance.region;
    if (!std::isfinite(r.min.x) || !std::isfinite(r.min.y) || !std::isfinite(r.max.x) ||
        !std::isfinite(r.max.y))
      add("invalid-region", "region bounds must be finite");
    else if (r.min.x > r.max.x || r.min.y > r.max.y)
      add("invalid-region", "region min must not exceed max");
  }
  if (instance.interval && instance.interval->start > instance.interval->end)
    add("invalid-interval", "interval start must not exceed end");
  if (instance.center && (!std::isfinite(instance.center->x) || !std::isfinite(instance.center->y)))
    add("invalid-center", "center must be finite");
  if (instance.k && *instance.k < 1) add("invalid-k", "k must be >= 1");
  if (instance.new_point) {
    const TrajectoryPoint& p = *instance.new_point;
    if (!std::isfinite(p.pos.x) || !std::isfinite(p.pos.y))
      add("invalid-point", "new_point coordinates must be finite");
    if (p.t < 0) add("invalid-point", "new_point timestamp must be >= 0");
  }
  return violations;
}

std::vector<std::uint64_t> apportion_largest_remainder(const std::vector<double>& weights,
                                                       std::uint64_t count) {
  if (weights.empty()) throw ConfigError("apportionment needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw ConfigError("weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw ConfigError("weights must not all be zero");

  std::vector<std::uint64_t> shares(weights.size(), 0);
  std::vector<double> remainders(weights.size(), 0.0);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double quota = static_cast<double>(count) * weights[i] / total;
    const double base = std::floor(quota);
    shares[i] = static_cast<std::uint64_t>(base);
    // Remainders share the denominator `total`, so comparing them compares
    // fractional parts; with integer-valued weights every term is exactly
    // representable and ties stay exact ties.
    remainders[i] = static_cast<double>(count) * weights[i] - base * total;
    assigned += shares[i];
  }

  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&remainders](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });

  // Rounding of the quotas can land one off in either direction; settle the
  // difference along the same tie-break order.
  std::size_t cursor = 0;
  while (assigned < count) {
    ++shares[order[cursor % order.size()]];
    ++assigned;
    ++cursor;
  }
  cursor = order.size();
  while (assigned > count) {
    --cursor;
    const std::size_t idx = order[cursor % order.size()];
    if (shares[idx] > 0) {
      --shares[idx];
      --assigned;
    }
    if (cursor == 0) cursor = order.size();
  }
  return shares;
}

TimeStamp knn_time_tolerance_ms(const Dataset& dataset) {
  const TimeStamp gap = min_sample_gap_ms(dataset);
  if (gap > 0) return (gap + 1) / 2;
  return dataset.time_span.length();
}

namespace {

// Running state for appends so successive writes to one object chain into a
// plausible trajectory continuation.
struct AppendState {
  TimeStamp last_t = 0;
  Point2D last_pos;
  TimeStamp gap_ms = 0;     // this object's final sampling gap, 0 if unknown
  double max_step = 0.0;    // largest observed per-sample displacement
};

class Instantiator {
 public:
  Instantiator(const Dataset& dataset, std::uint64_t seed)
      : dataset_(dataset), summary_(summarize(dataset)), rng_(substream(seed, 1)) {
    offsets_.reserve(dataset.trajectories.size() + 1);
    offsets_.push_back(0);
    for (const Trajectory& trajectory : dataset.trajectories)
      offsets_.push_back(offsets_.back() + trajectory.points.size());
    fallback_gap_ = min_sample_gap_ms(dataset);
    if (fallback_gap_ <= 0) fallback_gap_ = 1000;
  }

  QueryInstance make(const QueryTemplate& tmpl, std::uint64_t instance_id) {
    QueryInstance instance;
    instance.instance_id = instance_id;
    instance.kind = tmpl.kind;
    switch (tmpl.kind) {
      case QueryKind::SpatialRange: {
        const Point2D center = window_center(tmpl.anchored);
        instance.region = make_region(center, *tmpl.spatial_fraction);
        break;
      }
      case QueryKind::TemporalRange: {
        const TimeStamp center = time_center(tmpl.anchored);
        instance.interval = make_interval(center, *tmpl.temporal_fraction);
        break;
      }
      case QueryKind::SpatioTemporalRange: {
        if (tmpl.anchored) {
          const TrajectoryPoint& anchor = pick_point();
          instance.region = make_region(anchor.pos, *tmpl.spatial_fraction);
          instance.interval = make_interval(anchor.t, *tmpl.temporal_fraction);
        } else {
          instance.region = make_region(uniform_position(), *tmpl.spatial_fraction);
          instance.interval = make_interval(uniform_time(), *tmpl.temporal_fraction);
        }
        break;
      }
      case QueryKind::KNearestNeighbors: {
        if (tmpl.anchored) {
          const TrajectoryPoint& anchor = pick_point();
          instance.center = anchor.pos;
          instance.at_time = anchor.t;
        } else {
          instance.center = uniform_position();
          instance.at_time = uniform_time();
        }
        instance.k = *tmpl.k;
        break;
      }
      case QueryKind::ObjectTrajectory: {
        const std::size_t index =
            static_cast<std::size_t>(rng_.next_below(dataset_.trajectories.size()));
        instance.object_id = dataset_.trajectories[index].object_id;
        if (tmpl.temporal_fraction) {
          instance.interval = make_interval(uniform_time(), *tmpl.temporal_fraction);
        } else {
          instance.interval = summary_.time_span;
        }
        break;
      }
      case QueryKind::AppendPoint: {
        instance.new_point = next_append();
        break;
      }
    }
    return instance;
  }

 private:
  Point2D window_center(bool anchored) {
    return anchored ? pick_point().pos : uniform_position();
  }

  TimeStamp time_center(bool anchored) { return anchored ? pick_point().t : uniform_time(); }

  const TrajectoryPoint& pick_point() {
    const std::uint64_t flat = rng_.next_below(offsets_.back());
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat);
    const std::size_t trajectory_index =
        static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
    const Trajectory& trajectory = dataset_.trajectories[trajectory_index];
    return trajectory.points[static_cast<std::size_t>(flat - offsets_[trajectory_index])];
  }

  Point2D uniform_position() {
    const Region& extent = summary_.extent;
    return Point2D{rng_.next_in(extent.min.x, extent.max.x),
                   rng_.next_in(extent.min.y, extent.max.y)};
  }

  TimeStamp uniform_time() {
    const TimeInterval& span = summary_.time_span;
    return span.start +
           static_cast<TimeStamp>(rng_.next_below(static_cast<std::uint64_t>(span.length()) + 1));
  }

  Region make_region(const Point2D& center, double fraction) const {
    const double half_w = fraction * summary_.extent.width() / 2.0;
    const double half_h = fraction * summary_.extent.height() / 2.0;
    return Region{Point2D{center.x - half_w, center.y - half_h},
                  Point2D{center.x + half_w, center.y + half_h}};
  }

  TimeInterval make_interval(TimeStamp center, double fraction) const {
    const auto length = static_cast<TimeStamp>(
        std::llround(fraction * static_cast<double>(summary_.time_span.length())));
    TimeStamp start = center - length / 2;
    if (start < 0) start = 0;
    return TimeInterval{start, start + length};
  }

  TrajectoryPoint next_append() {
    const std::size_t index =
        static_cast<std::size_t>(rng_.next_below(dataset_.trajectories.size()));
    auto [it, fresh] = append_state_.try_emplace(index);
    AppendState& state = it->second;
    if (fresh) {
      const Trajectory& trajectory = dataset_.trajectories[index];
      const TrajectoryPoint& last = trajectory.points.back();
      state.last_t = last.t;
      state.last_pos = last.pos;
      for (std::size_t i = 1; i < trajectory.points.size(); ++i) {
        const TrajectoryPoint& a = trajectory.points[i - 1];
        const TrajectoryPoint& b = trajectory.points[i];
        const double dx = b.pos.x - a.pos.x;
        const double dy = b.pos.y - a.pos.y;
        state.max_step = std::max(state.max_step, std::sqrt(dx * dx + dy * dy));
      }
      if (trajectory.points.size() >= 2) {
        state.gap_ms = last.t - trajectory.points[trajectory.points.size() - 2].t;
      }
    }

    const TimeStamp gap = state.gap_ms > 0 ? state.gap_ms : fallback_gap_;
    TrajectoryPoint point;
    point.object_id = dataset_.trajectories[index].object_id;
    point.t = state.last_t + gap;
    point.pos = state.last_pos;
    if (state.max_step > 0.0) {
      // Uniform in the disk of the largest observed step, by rejection, so
      // the appended sample respects the trajectory's own speed bound.
      const double r = state.max_step;
      for (;;) {
        const double dx = rng_.next_in(-r, r);
        const double dy = rng_.next_in(-r, r);
        if (dx * dx + dy * dy <= r * r) {
          point.pos.x += dx;
          point.pos.y += dy;
          break;
        }
      }
    }
    state.last_t = point.t;
    state.last_pos = point.pos;
    return point;
  }

  const Dataset& dataset_;
  DatasetSummary summary_;
  SplitMix64 rng_;
  std::vector<std::uint64_t> offsets_;  // prefix sums of trajectory lengths
  std::unordered_map<std::size_t, AppendState> append_state_;
  TimeStamp fallback_gap_ = 1000;
};

}  // namespace

std::vector<QueryInstance> instantiate(const std::vector<QueryTemplate>& templates,
                                       const Dataset& dataset, std::uint64_t seed,
                                       std::uint64_t count) {
  validate_templates(templates);

  std::vector<double> weights;
  weights.reserve(templates.size());
  for (const QueryTemplate& t : templates) weights.push_back(t.weight);
  const std::vector<std::uint64_t> shares = apportion_largest_remainder(weights, count);

  std::vector<std::uint32_t> sequence;
  sequence.reserve(count);
  for (std::size_t i = 0; i < shares.size(); ++i)
    sequence.insert(sequence.end(), shares[i], static_cast<std::uint32_t>(i));

  // Fisher-Yates on its own substream; parameter draws use substream 1 so the
  // shuffle length cannot shift them.
  SplitMix64 shuffle_rng = substream(seed, 0);
  for (std::size_t i = sequence.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(shuffle_rng.next_below(i));
    std::swap(sequence[i - 1], sequence[j]);
  }

  Instantiator instantiator(dataset, seed);
  std::vector<QueryInstance> instances;
  instances.reserve(sequence.size());
  for (std::size_t i = 0; i < sequence.size(); ++i)
    instances.push_back(instantiator.make(templates[sequence[i]], i + 1));
  return instances;
}

namespace {

std::string emit_neutral(const QueryInstance& q) {
  std::ostringstream out;
  switch (q.kind) {
    case QueryKind::SpatialRange:
      out << "RANGE SPACE " << format_double(q.region->min.x) << ' '
          << format_double(q.region->min.y) << ' ' << format_double(q.region->max.x) << ' '
          << format_double(q.region->max.y);
      break;
    case QueryKind::TemporalRange:
      out << "RANGE TIME " << q.interval->start << ' ' << q.interval->end;
      break;
    case QueryKind::SpatioTemporalRange:
      out << "RANGE ST " << format_double(q.region->min.x) << ' '
          << format_double(q.region->min.y) << ' ' << format_double(q.region->max.x) << ' '
          << format_double(q.region->max.y) << ' ' << q.interval->start << ' '
          << q.interval->end;
      break;
    case QueryKind::KNearestNeighbors:
      out << "KNN " << format_double(q.center->x) << ' ' << format_double(q.center->y) << ' '
          << *q.at_time << ' ' << *q.k;
      break;
    case QueryKind::ObjectTrajectory:
      out << "TRAJ " << *q.object_id << ' ' << q.interval->start << ' ' << q.interval->end;
      break;
    case QueryKind::AppendPoint:
      out << "APPEND " << q.new_point->object_id << ' ' << q.new_point->t << ' '
          << format_double(q.new_point->pos.x) << ' ' << format_double(q.new_point->pos.y);
      break;
  }
  return out.str();
}

std::string emit_generic_sql(const QueryInstance& q, const GenericSqlOptions& options) {
  std::ostringstream out;
  switch (q.kind) {
    case QueryKind::SpatialRange:
      out << "SELECT object_id, t, x, y FROM points WHERE x BETWEEN "
          << format_double(q.region->min.x) << " AND " << format_double(q.region->max.x)
          << " AND y BETWEEN " << format_double(q.region->min.y) << " AND "
          << format_double(q.region->max.y) << ";";
      break;
    case QueryKind::TemporalRange:
      out << "SELECT object_id, t, x, y FROM points WHERE t BETWEEN " << q.interval->start
          << " AND " << q.interval->end << ";";
      break;
    case QueryKind::SpatioTemporalRange:
      out << "SELECT object_id, t, x, y FROM points WHERE x BETWEEN "
          << format_double(q.region->min.x) << " AND " << format_double(q.region->max.x)
          << " AND y BETWEEN " << format_double(q.region->min.y) << " AND "
          << format_double(q.region->max.y) << " AND t BETWEEN " << q.interval->start
          << " AND " << q.interval->end << ";";
      break;
    case QueryKind::KNearestNeighbors:
      out << "SELECT object_id, t, x, y FROM points WHERE t BETWEEN "
          << (*q.at_time - options.knn_time_tolerance_ms) << " AND "
          << (*q.at_time + options.knn_time_tolerance_ms) << " ORDER BY ((x - "
          << format_double(q.center->x) << ")^2 + (y - " << format_double(q.center->y)
          << ")^2), object_id, t LIMIT " << *q.k << ";";
      break;
    case QueryKind::ObjectTrajectory:
      out << "SELECT object_id, t, x, y FROM points WHERE object_id = " << *q.object_id
          << " AND t BETWEEN " << q.interval->start << " AND " << q.interval->end
          << " ORDER BY t;";
      break;
    case QueryKind::AppendPoint:
      out << "INSERT INTO points (object_id, t, x, y) VALUES (" << q.new_point->object_id
          << ", " << q.new_point->t << ", " << format_double(q.new_point->pos.x) << ", "
          << format_double(q.new_point->pos.y) << ");";
      break;
  }
  return out.str();
}

}  // namespace

void DialectRegistry::register_dialect(Dialect dialect) {
  if (dialect.name.empty()) throw ConfigError("dialect name must not be empty");
  if (!dialect.emitter) throw ConfigError("dialect " + dialect.name + " has no emitter");
  std::string name = dialect.name;
  const auto [it, inserted] = dialects_.emplace(std::move(name), std::move(dialect));
  if (!inserted) throw ConfigError("dialect " + it->first + " is already registered");
}

bool DialectRegistry::has(std::string_view name) const {
  return dialects_.find(name) != dialects_.end();
}

std::vector<std::string> DialectRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(dialects_.size());
  for (const auto& [name, dialect] : dialects_) out.push_back(name);
  return out;
}

QueryText DialectRegistry::translate(const QueryInstance& instance,
                                     std::string_view dialect_name) const {
  const auto it = dialects_.find(dialect_name);
  if (it == dialects_.end())
    throw ConfigError("unknown dialect \"" + std::string(dialect_name) + "\"; registered: " +
                      join_names(names()));
  const std::vector<Violation> violations = validate_instance(instance);
  if (!violations.empty())
    throw ValidationError("invalid query instance: [" + violations.front().code + "] " +
                          violations.front().message);
  return QueryText{it->second.name, it->second.emitter(instance)};
}

Dialect make_neutral_dialect() { return Dialect{"neutral", emit_neutral}; }

Dialect make_generic_sql_dialect(const GenericSqlOptions& options) {
  return Dialect{"generic-sql",
                 [options](const QueryInstance& q) { return emit_generic_sql(q, options); }};
}

DialectRegistry make_default_registry(const GenericSqlOptions& options) {
  DialectRegistry registry;
  registry.register_dialect(make_neutral_dialect());
  registry.register_dialect(make_generic_sql_dialect(options));
  return registry;
}

namespace {

// Cursor over one line of neutral text; every error carries the byte offset.
class NeutralScanner {
 public:
  explicit NeutralScanner(std::string_view text) : text_(text) {}

  std::string_view word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ') ++pos_;
    if (pos_ == start) fail(start, "expected a token");
    return text_.substr(start, pos_ - start);
  }

  void space() {
    if (pos_ >= text_.size() || text_[pos_] != ' ') fail(pos_, "expected a single space");
    ++pos_;
  }

  double number() {
    const std::size_t start = pos_;
    const std::string_view token = word();
    double value = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size() ||
        !std::isfinite(value))
      fail(start, "expected a finite decimal number");
    return value;
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    const std::string_view token = word();
    std::int64_t value = 0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size())
      fail(start, "expected an integer");
    return value;
  }

  std::uint64_t unsigned_integer() {
    const std::size_t start = pos_;
    const std::string_view token = word();
    std::uint64_t value = 0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size())
      fail(start, "expected an unsigned integer");
    return value;
  }

  void end() {
    if (pos_ != text_.size()) fail(pos_, "unexpected trailing characters");
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& what) const {
    std::ostringstream out;
    out << "offset " << offset << ": " << what;
    throw ParseError(out.str());
  }

  [[nodiscard]] std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QueryInstance parse_neutral(std::string_view text) {
  NeutralScanner scan(text);
  QueryInstance q;

  const std::string_view head = scan.word();
  if (head == "RANGE") {
    scan.space();
    const std::size_t form_pos = scan.pos();
    const std::string_view form = scan.word();
    if (form == "SPACE" || form == "ST") {
      Region region;
      scan.space();
      const std::size_t region_pos = scan.pos();
      region.min.x = scan.number();
      scan.space();
      region.min.y = scan.number();
      scan.space();
      region.max.x = scan.number();
      scan.space();
      region.max.y = scan.number();
      if (region.min.x > region.max.x || region.min.y > region.max.y)
        scan.fail(region_pos, "region min exceeds max");
      q.region = region;
      if (form == "SPACE") {
        q.kind = QueryKind::SpatialRange;
      } else {
        q.kind = QueryKind::SpatioTemporalRange;
        TimeInterval interval;
        scan.space();
        const std::size_t interval_pos = scan.pos();
        interval.start = scan.integer();
        scan.space();
        interval.end = scan.integer();
        if (interval.start > interval.end) scan.fail(interval_pos, "interval start exceeds end");
        q.interval = interval;
      }
    } else if (form == "TIME") {
      q.kind = QueryKind::TemporalRange;
      TimeInterval interval;
      scan.space();
      const std::size_t interval_pos = scan.pos();
      interval.start = scan.integer();
      scan.space();
      interval.end = scan.integer();
      if (interval.start > interval.end) scan.fail(interval_pos, "interval start exceeds end");
      q.interval = interval;
    } else {
      scan.fail(form_pos, "expected SPACE, TIME or ST");
    }
  } else if (head == "KNN") {
    q.kind = QueryKind::KNearestNeighbors;
    Point2D center;
    scan.space();
    center.x = scan.number();
    scan.space();
    center.y = scan.number();
    q.center = center;
    scan.space();
    q.at_time = scan.integer();
    scan.space();
    const std::size_t k_pos = scan.pos();
    const std::uint64_t k = scan.unsigned_integer();
    if (k < 1 || k > 0xffffffffull) scan.fail(k_pos, "k must be in [1, 2^32)");
    q.k = static_cast<std::uint32_t>(k);
  } else if (head == "TRAJ") {
    q.kind = QueryKind::ObjectTrajectory;
    scan.space();
    q.object_id = scan.unsigned_integer();
    TimeInterval interval;
    scan.space();
    const std::size_t interval_pos = scan.pos();
    interval.start = scan.integer();
    scan.space();
    interval.end = scan.integer();
    if (interval.start > interval.end) scan.fail(interval_pos, "interval start exceeds end");
    q.interval = interval;
  } else if (head == "APPEND") {
    q.kind = QueryKind::AppendPoint;
    TrajectoryPoint point;
    scan.space();
    point.object_id = scan.unsigned_integer();
    scan.space();
    const std::size_t t_pos = scan.pos();
    point.t = scan.integer();
    if (point.t < 0) scan.fail(t_pos, "timestamp must be >= 0");
    scan.space();
    point.pos.x = scan.number();
    scan.space();
    point.pos.y = scan.number();
    q.new_point = point;
  } else {
    scan.fail(0, "expected RANGE, KNN, TRAJ or APPEND");
  }
  scan.end();
  return q;
}

double estimate_selectivity(const QueryInstance& instance, const Dataset& dataset) {
  if (is_write_kind(instance.kind))
    throw UnsupportedError("selectivity is undefined for write kind " +
                           std::string(to_string(instance.kind)));
  const QueryResult result = bruteforce_eval(instance, dataset);
  const std::size_t total = dataset.total_points();
  if (total == 0) return 0.0;
  return static_cast<double>(result.rows.size()) / static_cast<double>(total);
}

}  // namespace stbench
