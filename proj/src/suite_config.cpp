// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "stbench/suite_config.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "stbench/error.hpp"

namespace stbench {

namespace {

struct Lint {
  std::vector<Diagnostic>& diags;
  std::size_t error_count = 0;

  void error(std::string where, std::string message) {
    diags.push_back({Severity::error, std::move(where), std::move(message)});
    ++error_count;
  }
  void warning(std::string where, std::string message) {
    diags.push_back({Severity::warning, std::move(where), std::move(message)});
  }
};

bool is_u64(const nlohmann::json& v) {
  return v.is_number_integer() &&
         (v.is_number_unsigned() || v.get<std::int64_t>() >= 0);
}

void check_unknown_keys(const nlohmann::json& section, const std::string& prefix,
                        std::initializer_list<std::string_view> known, Lint& lint) {
  for (const auto& [key, value] : section.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      lint.error(prefix + "." + key, "unknown key");
}

std::optional<std::uint64_t> want_u64(const nlohmann::json& section, const std::string& prefix,
                                      const char* key, Lint& lint) {
  const auto it = section.find(key);
  if (it == section.end()) return std::nullopt;
  if (!is_u64(*it)) {
    lint.error(prefix + "." + key, "must be a non-negative integer");
    return std::nullopt;
  }
  return it->get<std::uint64_t>();
}

std::optional<std::uint32_t> want_u32(const nlohmann::json& section, const std::string& prefix,
                                      const char* key, Lint& lint) {
  const auto it = section.find(key);
  if (it == section.end()) return std::nullopt;
  if (!is_u64(*it) || it->get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    lint.error(prefix + "." + key, "must be a non-negative integer below 2^32");
    return std::nullopt;
  }
  return it->get<std::uint32_t>();
}

std::optional<std::int64_t> want_i64(const nlohmann::json& section, const std::string& prefix,
                                     const char* key, Lint& lint) {
  const auto it = section.find(key);
  if (it == section.end()) return std::nullopt;
  if (!it->is_number_integer()) {
    lint.error(prefix + "." + key, "must be an integer");
    return std::nullopt;
  }
  return it->get<std::int64_t>();
}

std::optional<double> want_double(const nlohmann::json& section, const std::string& prefix,
                                  const char* key, Lint& lint) {
  const auto it = section.find(key);
  if (it == section.end()) return std::nullopt;
  if (!it->is_number()) {
    lint.error(prefix + "." + key, "must be a number");
    return std::nullopt;
  }
  return it->get<double>();
}

std::optional<bool> want_bool(const nlohmann::json& section, const std::string& prefix,
                              const char* key, Lint& lint) {
  const auto it = section.find(key);
  if (it == section.end()) return std::nullopt;
  if (!it->is_boolean()) {
    lint.error(prefix + "." + key, "must be a boolean");
    return std::nullopt;
  }
  return it->get<bool>();
}

std::optional<std::string> want_string(const nlohmann::json& section, const std::string& prefix,
                                       const char* key, Lint& lint) {
  const auto it = section.find(key);
  if (it == section.end()) return std::nullopt;
  if (!it->is_string()) {
    lint.error(prefix + "." + key, "must be a string");
    return std::nullopt;
  }
  return it->get<std::string>();
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const std::string& name : names) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

std::optional<DataGenConfig> lint_data(const nlohmann::json& section, Lint& lint) {
  const std::size_t errors_before = lint.error_count;
  DataGenConfig cfg;
  check_unknown_keys(section, "data",
                     {"seed", "n_objects", "points_per_object", "region", "speed_min",
                      "speed_max", "sample_interval_ms"},
                     lint);
  if (const auto v = want_u64(section, "data", "seed", lint)) cfg.seed = *v;
  if (const auto v = want_u32(section, "data", "n_objects", lint)) cfg.n_objects = *v;
  if (const auto it = section.find("points_per_object"); it != section.end()) {
    const auto in_range = [](const nlohmann::json& v) {
      return is_u64(v) && v.get<std::uint64_t>() >= 1 &&
             v.get<std::uint64_t>() <= std::numeric_limits<std::uint32_t>::max();
    };
    if (in_range(*it)) {
      cfg.points_min = cfg.points_max = it->get<std::uint32_t>();
    } else if (it->is_array() && it->size() == 2 && in_range((*it)[0]) && in_range((*it)[1])) {
      cfg.points_min = (*it)[0].get<std::uint32_t>();
      cfg.points_max = (*it)[1].get<std::uint32_t>();
    } else {
      lint.error("data.points_per_object", "must be a positive integer or a [min, max] pair");
    }
  }
  if (const auto it = section.find("region"); it != section.end()) {
    const bool shaped = it->is_array() && it->size() == 4 &&
                        std::all_of(it->begin(), it->end(),
                                    [](const nlohmann::json& v) { return v.is_number(); });
    if (shaped) {
      cfg.region.min = {(*it)[0].get<double>(), (*it)[1].get<double>()};
      cfg.region.max = {(*it)[2].get<double>(), (*it)[3].get<double>()};
    } else {
      lint.error("data.region", "must be a [xmin, ymin, xmax, ymax] number array");
    }
  } else {
    lint.error("data.region", "required key is missing");
  }
  if (const auto v = want_double(section, "data", "speed_min", lint)) cfg.speed_min = *v;
  if (const auto v = want_double(section, "data", "speed_max", lint)) cfg.speed_max = *v;
  if (const auto v = want_i64(section, "data", "sample_interval_ms", lint))
    cfg.sample_interval_ms = *v;
  if (lint.error_count != errors_before) return std::nullopt;
  try {
    validate_datagen_config(cfg);
  } catch (const ConfigError& e) {
    lint.error("data", e.what());
    return std::nullopt;
  }
  return cfg;
}

std::optional<QueriesConfig> lint_queries(const nlohmann::json& section, Lint& lint) {
  const std::size_t errors_before = lint.error_count;
  QueriesConfig cfg;
  check_unknown_keys(section, "queries", {"templates", "seed", "count", "dialect"}, lint);
  if (const auto it = section.find("templates"); it != section.end()) {
    if (!it->is_array()) {
      lint.error("queries.templates", "must be an array");
    } else {
      for (std::size_t i = 0; i < it->size(); ++i) {
        const nlohmann::json& doc = (*it)[i];
        std::ostringstream prefix_stream;
        prefix_stream << "queries.templates[" << i << "]";
        const std::string prefix = prefix_stream.str();
        if (!doc.is_object()) {
          lint.error(prefix, "must be an object");
          continue;
        }
        check_unknown_keys(
            doc, prefix,
            {"kind", "weight", "spatial_fraction", "temporal_fraction", "k", "anchored"}, lint);
        QueryTemplate tmpl;
        if (const auto name = want_string(doc, prefix, "kind", lint)) {
          if (const auto kind = query_kind_from_string(*name))
            tmpl.kind = *kind;
          else
            lint.error(prefix + ".kind", "unknown query kind: " + *name);
        } else if (doc.find("kind") == doc.end()) {
          lint.error(prefix + ".kind", "required key is missing");
        }
        if (const auto v = want_double(doc, prefix, "weight", lint)) tmpl.weight = *v;
        if (const auto v = want_double(doc, prefix, "spatial_fraction", lint))
          tmpl.spatial_fraction = *v;
        if (const auto v = want_double(doc, prefix, "temporal_fraction", lint))
          tmpl.temporal_fraction = *v;
        if (const auto v = want_u32(doc, prefix, "k", lint)) tmpl.k = *v;
        if (const auto v = want_bool(doc, prefix, "anchored", lint)) tmpl.anchored = *v;
        cfg.templates.push_back(tmpl);
      }
    }
  } else {
    lint.error("queries.templates", "required key is missing");
  }
  if (const auto v = want_u64(section, "queries", "seed", lint)) cfg.seed = *v;
  if (const auto v = want_u64(section, "queries", "count", lint))
    cfg.count = *v;
  else if (section.find("count") == section.end())
    lint.error("queries.count", "required key is missing");
  if (cfg.count < 1 && section.find("count") != section.end() && is_u64(section["count"]))
    lint.error("queries.count", "must be >= 1");
  if (const auto v = want_string(section, "queries", "dialect", lint)) cfg.dialect = *v;
  static const DialectRegistry registry = make_default_registry();
  if (!registry.has(cfg.dialect))
    lint.error("queries.dialect",
               "unknown dialect " + cfg.dialect + "; registered: " + join(registry.names()));
  if (lint.error_count != errors_before) return std::nullopt;
  try {
    validate_templates(cfg.templates);
  } catch (const ConfigError& e) {
    lint.error("queries", e.what());
    return std::nullopt;
  }
  return cfg;
}

std::optional<SutConfig> lint_sut(const nlohmann::json& section, Lint& lint) {
  const std::size_t errors_before = lint.error_count;
  SutConfig cfg;
  check_unknown_keys(section, "sut", {"adapter", "index", "options"}, lint);
  if (const auto v = want_string(section, "sut", "adapter", lint)) cfg.adapter = *v;
  static const AdapterRegistry registry = make_default_adapter_registry();
  if (!registry.has(cfg.adapter))
    lint.error("sut.adapter",
               "unknown adapter " + cfg.adapter + "; registered: " + join(registry.names()));
  if (const auto it = section.find("index"); it != section.end()) {
    if (!it->is_object()) {
      lint.error("sut.index", "must be an object");
    } else {
      check_unknown_keys(*it, "sut.index", {"kind", "cell_size", "time_bucket_ms"}, lint);
      if (const auto name = want_string(*it, "sut.index", "kind", lint)) {
        if (const auto kind = index_kind_from_string(*name))
          cfg.index.kind = *kind;
        else
          lint.error("sut.index.kind", "must be one of: none, grid");
      }
      if (const auto v = want_double(*it, "sut.index", "cell_size", lint))
        cfg.index.cell_size = *v;
      if (const auto v = want_i64(*it, "sut.index", "time_bucket_ms", lint))
        cfg.index.time_bucket_ms = *v;
    }
  }
  if (const auto it = section.find("options"); it != section.end()) {
    if (!it->is_object())
      lint.error("sut.options", "must be an object");
    else
      cfg.options = *it;
  }
  if (lint.error_count != errors_before) return std::nullopt;
  try {
    validate_index_spec(cfg.index);
  } catch (const ConfigError& e) {
    lint.error("sut.index", e.what());
    return std::nullopt;
  }
  return cfg;
}

std::optional<WorkloadConfig> lint_workload(const nlohmann::json& section, Lint& lint) {
  const std::size_t errors_before = lint.error_count;
  WorkloadConfig cfg;
  check_unknown_keys(
      section, "workload",
      {"workers", "total_ops", "warmup_ops", "mode", "target_rate", "think_time_ms"}, lint);
  if (const auto v = want_u32(section, "workload", "workers", lint)) cfg.workers = *v;
  if (const auto v = want_u64(section, "workload", "total_ops", lint)) cfg.total_ops = *v;
  if (const auto v = want_u64(section, "workload", "warmup_ops", lint)) cfg.warmup_ops = *v;
  if (const auto name = want_string(section, "workload", "mode", lint)) {
    if (const auto mode = workload_mode_from_string(*name))
      cfg.mode = *mode;
    else
      lint.error("workload.mode", "must be one of: closed_loop, fixed_rate");
  }
  if (const auto v = want_double(section, "workload", "target_rate", lint)) cfg.target_rate = *v;
  if (const auto v = want_i64(section, "workload", "think_time_ms", lint)) cfg.think_time_ms = *v;
  if (lint.error_count != errors_before) return std::nullopt;
  try {
    validate_workload_config(cfg);
  } catch (const ConfigError& e) {
    lint.error("workload", e.what());
    return std::nullopt;
  }
  return cfg;
}

std::optional<AnalysisConfig> lint_analysis(const nlohmann::json& section, Lint& lint) {
  const std::size_t errors_before = lint.error_count;
  AnalysisConfig cfg;
  check_unknown_keys(section, "analysis", {"metrics", "group_by", "include_warmup"}, lint);
  if (const auto it = section.find("metrics"); it != section.end()) {
    if (!it->is_array()) {
      lint.error("analysis.metrics", "must be an array of metric names");
    } else {
      for (std::size_t i = 0; i < it->size(); ++i) {
        const nlohmann::json& v = (*it)[i];
        std::ostringstream where;
        where << "analysis.metrics[" << i << "]";
        if (!v.is_string()) {
          lint.error(where.str(), "must be a string");
          continue;
        }
        if (const auto metric = metric_from_string(v.get<std::string>()))
          cfg.metrics.push_back(*metric);
        else
          lint.error(where.str(), "unknown metric: " + v.get<std::string>());
      }
    }
  } else {
    lint.error("analysis.metrics", "required key is missing");
  }
  if (const auto it = section.find("group_by"); it != section.end()) {
    if (!it->is_array()) {
      lint.error("analysis.group_by", "must be an array of group keys");
    } else {
      for (std::size_t i = 0; i < it->size(); ++i) {
        const nlohmann::json& v = (*it)[i];
        std::ostringstream where;
        where << "analysis.group_by[" << i << "]";
        if (!v.is_string()) {
          lint.error(where.str(), "must be a string");
          continue;
        }
        if (const auto key = group_by_from_string(v.get<std::string>()))
          cfg.group_by.push_back(*key);
        else
          lint.error(where.str(), "must be one of: kind, worker_id");
      }
    }
  }
  if (const auto v = want_bool(section, "analysis", "include_warmup", lint))
    cfg.include_warmup = *v;
  if (lint.error_count != errors_before) return std::nullopt;
  try {
    validate_analysis_config(cfg);
  } catch (const ConfigError& e) {
    lint.error("analysis", e.what());
    return std::nullopt;
  }
  return cfg;
}

SuiteConfig lint_document(const nlohmann::json& doc, Lint& lint) {
  SuiteConfig cfg;
  if (!doc.is_object()) {
    lint.error("", "suite config must be a single object");
    return cfg;
  }
  static constexpr std::string_view kSections[] = {"data", "queries", "sut", "workload",
                                                   "analysis"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kSections), std::end(kSections), key) == std::end(kSections))
      lint.warning(key, "unknown section is ignored");
  }
  const auto section = [&](const char* name) -> const nlohmann::json* {
    const auto it = doc.find(name);
    if (it == doc.end()) return nullptr;
    if (!it->is_object()) {
      lint.error(name, "must be an object");
      return nullptr;
    }
    return &*it;
  };
  if (const nlohmann::json* s = section("data")) cfg.data = lint_data(*s, lint);
  if (const nlohmann::json* s = section("queries")) cfg.queries = lint_queries(*s, lint);
  if (const nlohmann::json* s = section("sut")) cfg.sut = lint_sut(*s, lint);
  if (const nlohmann::json* s = section("workload")) cfg.workload = lint_workload(*s, lint);
  if (const nlohmann::json* s = section("analysis")) cfg.analysis = lint_analysis(*s, lint);

  if (cfg.queries && cfg.workload && cfg.queries->count != cfg.workload->total_ops) {
    std::ostringstream message;
    message << "queries.count (" << cfg.queries->count << ") must equal workload.total_ops ("
            << cfg.workload->total_ops << ")";
    lint.error("queries.count", message.str());
  }
  return cfg;
}

}  // namespace

const char* to_string(Severity severity) {
  return severity == Severity::error ? "error" : "warning";
}

std::vector<Diagnostic> lint_suite_config(const nlohmann::json& doc) {
  std::vector<Diagnostic> diags;
  Lint lint{diags};
  lint_document(doc, lint);
  return diags;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

SuiteConfig parse_suite_config(const nlohmann::json& doc) {
  std::vector<Diagnostic> diags;
  Lint lint{diags};
  SuiteConfig cfg = lint_document(doc, lint);
  for (const Diagnostic& d : diags) {
    if (d.severity != Severity::error) continue;
    // Validator messages already carry the dotted path; avoid stuttering it.
    if (d.message.rfind(d.where, 0) == 0) throw ConfigError(d.message);
    throw ConfigError(d.where.empty() ? d.message : d.where + ": " + d.message);
  }
  return cfg;
}

nlohmann::json to_json(const SuiteConfig& cfg) {
  nlohmann::json doc = nlohmann::json::object();
  if (cfg.data) {
    nlohmann::json s;
    s["seed"] = cfg.data->seed;
    s["n_objects"] = cfg.data->n_objects;
    if (cfg.data->points_min == cfg.data->points_max)
      s["points_per_object"] = cfg.data->points_min;
    else
      s["points_per_object"] = {cfg.data->points_min, cfg.data->points_max};
    s["region"] = {cfg.data->region.min.x, cfg.data->region.min.y, cfg.data->region.max.x,
                   cfg.data->region.max.y};
    s["speed_min"] = cfg.data->speed_min;
    s["speed_max"] = cfg.data->speed_max;
    s["sample_interval_ms"] = cfg.data->sample_interval_ms;
    doc["data"] = s;
  }
  if (cfg.queries) {
    nlohmann::json s;
    nlohmann::json templates = nlohmann::json::array();
    for (const QueryTemplate& tmpl : cfg.queries->templates) {
      nlohmann::json t;
      t["kind"] = to_string(tmpl.kind);
      t["weight"] = tmpl.weight;
      if (tmpl.spatial_fraction) t["spatial_fraction"] = *tmpl.spatial_fraction;
      if (tmpl.temporal_fraction) t["temporal_fraction"] = *tmpl.temporal_fraction;
      if (tmpl.k) t["k"] = *tmpl.k;
      if (tmpl.anchored) t["anchored"] = true;
      templates.push_back(t);
    }
    s["templates"] = templates;
    s["seed"] = cfg.queries->seed;
    s["count"] = cfg.queries->count;
    s["dialect"] = cfg.queries->dialect;
    doc["queries"] = s;
  }
  if (cfg.sut) {
    nlohmann::json s;
    s["adapter"] = cfg.sut->adapter;
    nlohmann::json index;
    index["kind"] = to_string(cfg.sut->index.kind);
    if (cfg.sut->index.kind == IndexSpec::Kind::grid) {
      index["cell_size"] = cfg.sut->index.cell_size;
      index["time_bucket_ms"] = cfg.sut->index.time_bucket_ms;
    }
    s["index"] = index;
    if (!cfg.sut->options.empty()) s["options"] = cfg.sut->options;
    doc["sut"] = s;
  }
  if (cfg.workload) {
    nlohmann::json s;
    s["workers"] = cfg.workload->workers;
    s["total_ops"] = cfg.workload->total_ops;
    s["warmup_ops"] = cfg.workload->warmup_ops;
    s["mode"] = to_string(cfg.workload->mode);
    if (cfg.workload->mode == WorkloadMode::fixed_rate)
      s["target_rate"] = cfg.workload->target_rate;
    else
      s["think_time_ms"] = cfg.workload->think_time_ms;
    doc["workload"] = s;
  }
  if (cfg.analysis) {
    nlohmann::json s;
    nlohmann::json metrics = nlohmann::json::array();
    for (const Metric metric : cfg.analysis->metrics) metrics.push_back(to_string(metric));
    s["metrics"] = metrics;
    if (!cfg.analysis->group_by.empty()) {
      nlohmann::json keys = nlohmann::json::array();
      for (const GroupBy key : cfg.analysis->group_by) keys.push_back(to_string(key));
      s["group_by"] = keys;
    }
    if (cfg.analysis->include_warmup) s["include_warmup"] = true;
    doc["analysis"] = s;
  }
  return doc;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SuiteConfig load_suite_config_file(const std::string& path) {
  return parse_suite_config(load_json_file(path));
}

}  // namespace stbench
