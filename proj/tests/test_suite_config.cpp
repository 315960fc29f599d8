// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "stbench/error.hpp"
#include "stbench/suite_config.hpp"
#include "support.hpp"

using namespace stbench;
using nlohmann::json;

namespace {

bool has_error_at(const std::vector<Diagnostic>& diagnostics, const std::string& where) {
  for (const Diagnostic& d : diagnostics)
    if (d.severity == Severity::error && d.where == where) return true;
  return false;
}

std::string first_error(const std::vector<Diagnostic>& diagnostics) {
  for (const Diagnostic& d : diagnostics)
    if (d.severity == Severity::error) return d.where + ": " + d.message;
  return "";
}

}  // namespace

TEST_CASE("a complete document parses with every section engaged") {
  const json doc = test::sample_config_doc();
  const std::vector<Diagnostic> diagnostics = lint_suite_config(doc);
  CHECK_FALSE(has_errors(diagnostics));
  CHECK(diagnostics.empty());

  const SuiteConfig cfg = parse_suite_config(doc);
  REQUIRE(cfg.data.has_value());
  REQUIRE(cfg.queries.has_value());
  REQUIRE(cfg.sut.has_value());
  REQUIRE(cfg.workload.has_value());
  REQUIRE(cfg.analysis.has_value());

  CHECK(cfg.data->seed == 11);
  CHECK(cfg.data->n_objects == 5);
  CHECK(cfg.queries->templates.size() == 6);
  CHECK(cfg.queries->count == 40);
  CHECK(cfg.queries->dialect == "neutral");
  CHECK(cfg.sut->adapter == "embedded");
  CHECK(cfg.sut->index.kind == IndexSpec::Kind::grid);
  CHECK(cfg.workload->workers == 4);
  CHECK(cfg.workload->total_ops == 40);
  CHECK(cfg.analysis->metrics.size() == 7);
  CHECK(cfg.analysis->group_by == std::vector<GroupBy>{GroupBy::kind});
}

TEST_CASE("canonical form round-trips") {
  const SuiteConfig cfg = parse_suite_config(test::sample_config_doc());
  CHECK(parse_suite_config(to_json(cfg)) == cfg);

  SUBCASE("with a partial document") {
    json doc = test::sample_config_doc();
    doc.erase("workload");
    doc.erase("analysis");
    doc.erase("sut");
    doc["queries"].erase("count");  // cross-field pairing no longer applies
    doc["queries"]["count"] = 12;
    const SuiteConfig partial = parse_suite_config(doc);
    CHECK_FALSE(partial.workload.has_value());
    CHECK_FALSE(partial.analysis.has_value());
    CHECK_FALSE(partial.sut.has_value());
    CHECK(parse_suite_config(to_json(partial)) == partial);
  }
  SUBCASE("with variable trajectory lengths and a flat index") {
    json doc = test::sample_config_doc();
    doc["data"]["points_per_object"] = json::array({3, 9});
    doc["sut"]["index"] = {{"kind", "none"}};
    doc["sut"]["options"] = {{"verbose", true}};
    doc["workload"]["mode"] = "fixed_rate";
    doc["workload"]["target_rate"] = 250.0;
    doc["analysis"]["include_warmup"] = true;
    const SuiteConfig cfg2 = parse_suite_config(doc);
    CHECK(cfg2.data->points_min == 3);
    CHECK(cfg2.data->points_max == 9);
    CHECK(cfg2.sut->index.kind == IndexSpec::Kind::none);
    CHECK(cfg2.sut->options.at("verbose") == true);
    CHECK(cfg2.workload->mode == WorkloadMode::fixed_rate);
    CHECK(cfg2.analysis->include_warmup);
    CHECK(parse_suite_config(to_json(cfg2)) == cfg2);
  }
}

TEST_CASE("unknown top-level sections warn but do not fail") {
  json doc = test::sample_config_doc();
  doc["plotting"] = {{"theme", "dark"}};
  const std::vector<Diagnostic> diagnostics = lint_suite_config(doc);
  CHECK_FALSE(has_errors(diagnostics));
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].severity == Severity::warning);
  CHECK(diagnostics[0].where == "plotting");
  CHECK_NOTHROW(parse_suite_config(doc));
}

TEST_CASE("unknown keys inside a known section are errors") {
  json doc = test::sample_config_doc();
  doc["data"]["speeed_max"] = 3.0;
  const std::vector<Diagnostic> diagnostics = lint_suite_config(doc);
  CHECK(has_errors(diagnostics));
  CHECK(has_error_at(diagnostics, "data.speeed_max"));
  CHECK_THROWS_AS(parse_suite_config(doc), ConfigError);
}

TEST_CASE("type violations name the offending path") {
  json doc = test::sample_config_doc();
  SUBCASE("string for integer") {
    doc["data"]["seed"] = "eleven";
    CHECK(has_error_at(lint_suite_config(doc), "data.seed"));
  }
  SUBCASE("negative for unsigned") {
    doc["queries"]["count"] = -4;
    CHECK(has_error_at(lint_suite_config(doc), "queries.count"));
  }
  SUBCASE("region arity") {
    doc["data"]["region"] = json::array({0.0, 0.0, 100.0});
    CHECK(has_error_at(lint_suite_config(doc), "data.region"));
  }
  SUBCASE("templates not an array") {
    doc["queries"]["templates"] = "all";
    CHECK(has_error_at(lint_suite_config(doc), "queries.templates"));
  }
  SUBCASE("section not an object") {
    doc["workload"] = 7;
    CHECK(has_error_at(lint_suite_config(doc), "workload"));
  }
  SUBCASE("document not an object") {
    CHECK(has_errors(lint_suite_config(json::array({1, 2}))));
  }
}

TEST_CASE("missing required keys are errors") {
  json doc = test::sample_config_doc();
  SUBCASE("data.region") {
    doc["data"].erase("region");
    CHECK(has_error_at(lint_suite_config(doc), "data.region"));
  }
  SUBCASE("queries.templates") {
    doc["queries"].erase("templates");
    CHECK(has_error_at(lint_suite_config(doc), "queries.templates"));
  }
  SUBCASE("queries.count") {
    doc["queries"].erase("count");
    CHECK(has_error_at(lint_suite_config(doc), "queries.count"));
  }
  SUBCASE("analysis.metrics") {
    doc["analysis"].erase("metrics");
    CHECK(has_error_at(lint_suite_config(doc), "analysis.metrics"));
  }
}

TEST_CASE("template entries are linted with their index") {
  json doc = test::sample_config_doc();
  doc["queries"]["templates"][2]["k"] = 5;  // k on a TemporalRange template
  const std::vector<Diagnostic> diagnostics = lint_suite_config(doc);
  CHECK(has_errors(diagnostics));
  CHECK(first_error(diagnostics).find("queries.templates[2]") != std::string::npos);
}

TEST_CASE("unregistered names are rejected with the known set") {
  json doc = test::sample_config_doc();
  SUBCASE("dialect") {
    doc["queries"]["dialect"] = "prolog";
    const auto diagnostics = lint_suite_config(doc);
    CHECK(has_error_at(diagnostics, "queries.dialect"));
    CHECK(first_error(diagnostics).find("neutral") != std::string::npos);
  }
  SUBCASE("adapter") {
    doc["sut"]["adapter"] = "turbo";
    const auto diagnostics = lint_suite_config(doc);
    CHECK(has_error_at(diagnostics, "sut.adapter"));
    CHECK(first_error(diagnostics).find("embedded") != std::string::npos);
  }
  SUBCASE("metric") {
    doc["analysis"]["metrics"] = json::array({"throughput", "latency_p42"});
    CHECK(has_error_at(lint_suite_config(doc), "analysis.metrics[1]"));
  }
  SUBCASE("group key") {
    doc["analysis"]["group_by"] = json::array({"phase"});
    CHECK(has_error_at(lint_suite_config(doc), "analysis.group_by[0]"));
  }
  SUBCASE("query kind") {
    doc["queries"]["templates"][0]["kind"] = "Sideways";
    CHECK(has_errors(lint_suite_config(doc)));
  }
  SUBCASE("workload mode") {
    doc["workload"]["mode"] = "open_loop";
    CHECK(has_error_at(lint_suite_config(doc), "workload.mode"));
  }
  SUBCASE("index kind") {
    doc["sut"]["index"]["kind"] = "rtree";
    CHECK(has_errors(lint_suite_config(doc)));
  }
}

TEST_CASE("queries.count must agree with workload.total_ops") {
  json doc = test::sample_config_doc();
  doc["workload"]["total_ops"] = 80;
  doc["workload"]["warmup_ops"] = 8;
  doc["queries"]["count"] = 100;
  const std::vector<Diagnostic> diagnostics = lint_suite_config(doc);
  CHECK(has_errors(diagnostics));
  CHECK(first_error(diagnostics).find("queries.count (100) must equal workload.total_ops (80)")
        != std::string::npos);

  SUBCASE("no pairing without a workload section") {
    doc.erase("workload");
    CHECK_FALSE(has_errors(lint_suite_config(doc)));
  }
}

TEST_CASE("module validators run inside the lint") {
  json doc = test::sample_config_doc();
  SUBCASE("zero workers") {
    doc["workload"]["workers"] = 0;
    const auto diagnostics = lint_suite_config(doc);
    CHECK(has_errors(diagnostics));
    CHECK(first_error(diagnostics).find("workers") != std::string::npos);
  }
  SUBCASE("inverted speeds") {
    doc["data"]["speed_min"] = 50.0;
    doc["data"]["speed_max"] = 1.0;
    CHECK(has_errors(lint_suite_config(doc)));
  }
  SUBCASE("zero query count") {
    doc["queries"]["count"] = 0;
    doc["workload"]["total_ops"] = 0;  // isolate the count rule
    CHECK(has_errors(lint_suite_config(doc)));
  }
  SUBCASE("grid index without a positive cell") {
    doc["sut"]["index"]["cell_size"] = 0.0;
    CHECK(has_errors(lint_suite_config(doc)));
  }
}

TEST_CASE("parse_suite_config throws the first lint error") {
  json doc = test::sample_config_doc();
  doc["workload"]["workers"] = 0;
  CHECK_THROWS_WITH_AS(parse_suite_config(doc), doctest::Contains("workers"), ConfigError);
}

TEST_CASE("lint never throws, whatever the document") {
  CHECK_NOTHROW(lint_suite_config(json()));
  CHECK_NOTHROW(lint_suite_config(json("just a string")));
  CHECK_NOTHROW(lint_suite_config(json::array({json::object()})));
  json doc = test::sample_config_doc();
  doc["data"] = json::array({1, 2, 3});
  doc["queries"]["templates"] = json::array({json::array(), "x", 7});
  doc["analysis"]["metrics"] = json::object();
  CHECK_NOTHROW(lint_suite_config(doc));
}

TEST_CASE("document loading reports io and syntax errors distinctly") {
  test::TempDir dir;
  CHECK_THROWS_AS(load_json_file(dir.file("absent.json")), IoError);

  {
    std::ofstream bad(dir.file("bad.json"));
    bad << "{\"data\": \n";
  }
  CHECK_THROWS_WITH_AS(load_json_file(dir.file("bad.json")), doctest::Contains("bad.json"),
                       ParseError);

  {
    std::ofstream good(dir.file("good.json"));
    good << test::sample_config_doc().dump(2);
  }
  const SuiteConfig cfg = load_suite_config_file(dir.file("good.json"));
  CHECK(cfg == parse_suite_config(test::sample_config_doc()));
}

TEST_CASE("severity names") {
  CHECK(std::string(to_string(Severity::warning)) == "warning");
  CHECK(std::string(to_string(Severity::error)) == "error");
}
