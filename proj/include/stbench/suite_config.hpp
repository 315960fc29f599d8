// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "stbench/analysis.hpp"
#include "stbench/datagen.hpp"
#include "stbench/loadgen.hpp"
#include "stbench/query.hpp"
#include "stbench/sut.hpp"

namespace stbench {

// `queries` section: what to instantiate and which dialect the SUT is
// driven in. count doubles as workload.total_ops when both are present.
struct QueriesConfig {
  std::vector<QueryTemplate> templates;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::string dialect = "neutral";

  friend bool operator==(const QueriesConfig&, const QueriesConfig&) = default;
};

// `sut` section: adapter selection plus its index layout. options is an
// adapter-specific passthrough document.
struct SutConfig {
  std::string adapter = "embedded";
  IndexSpec index;
  nlohmann::json options = nlohmann::json::object();

  friend bool operator==(const SutConfig& a, const SutConfig& b) {
    return a.adapter == b.adapter && a.index == b.index && a.options == b.options;
  }
};

// One declarative document with five sections; a section may be omitted
// when the invoked subcommand does not need it.
struct SuiteConfig {
  std::optional<DataGenConfig> data;
  std::optional<QueriesConfig> queries;
  std::optional<SutConfig> sut;
  std::optional<WorkloadConfig> workload;
  std::optional<AnalysisConfig> analysis;

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

enum class Severity {
  warning,
  error,
};

const char* to_string(Severity severity);

// One validation finding. `where` is a dotted config path ("workload.workers").
struct Diagnostic {
  Severity severity = Severity::error;
  std::string where;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Full schema plus cross-field validation of a parsed document. Unknown
// top-level keys are warnings; unknown keys inside a known section, type or
// range violations, count mismatches, and unregistered dialect/adapter
// names are errors. Never throws.
std::vector<Diagnostic> lint_suite_config(const nlohmann::json& doc);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Strict parse: throws ConfigError carrying the first lint error.
SuiteConfig parse_suite_config(const nlohmann::json& doc);

// Canonical document form; parse_suite_config(to_json(c)) == c.
nlohmann::json to_json(const SuiteConfig& cfg);

// Reads and parses a JSON document. Missing/unreadable file -> IoError;
// malformed syntax -> ParseError with byte position.
nlohmann::json load_json_file(const std::string& path);

SuiteConfig load_suite_config_file(const std::string& path);

}  // namespace stbench
