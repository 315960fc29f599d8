// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stbench/analysis.hpp"
#include "stbench/cli.hpp"
#include "stbench/log.hpp"

int main(int argc, char** argv) {
  stbench::set_log_level(stbench::log_level_from_env());

  CLI::App app{"benchmark suite for spatiotemporal data stores"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::string workdir = ".";
  std::string format_name = "structured";
  std::string dataset_path;
  std::vector<std::string> runlog_paths;
  bool force = false;

  CLI::App* validate =
      app.add_subcommand("validate", "Check a suite config and print diagnostics");
  validate->add_option("--config", config, "suite config file")->required();

  CLI::App* generate =
      app.add_subcommand("generate", "Generate a dataset from the `data` section");
  generate->add_option("--config", config, "suite config file")->required();
  generate->add_option("--out", out_path, "dataset file to write")->required();
  generate->add_flag("--force", force, "overwrite existing outputs");

  CLI::App* run =
      app.add_subcommand("run", "Execute the workload against the configured adapter");
  run->add_option("--config", config, "suite config file")->required();
  run->add_option("dataset", dataset_path, "dataset file (interchange format)")->required();
  run->add_option("--out", out_path, "run log to write")->required();
  run->add_flag("--force", force, "overwrite existing outputs");

  CLI::App* analyze =
      app.add_subcommand("analyze", "Compute a report (one log) or a comparison (two or more)");
  analyze->add_option("--config", config, "suite config file")->required();
  analyze->add_option("runlogs", runlog_paths, "run log files; first is the baseline")
      ->required();
  analyze->add_option("--out", out_path, "report or comparison file to write")->required();
  analyze->add_option("--format", format_name, "structured|tabular (default structured)")
      ->check(CLI::IsMember({"structured", "tabular"}));
  analyze->add_flag("--force", force, "overwrite existing outputs");

  CLI::App* all = app.add_subcommand("all", "Generate, run, and analyze as one pipeline");
  all->add_option("--config", config, "suite config file")->required();
  all->add_option("--workdir", workdir, "artifact directory (default .)");
  all->add_flag("--force", force, "overwrite existing outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems share the config-error exit
  }

  try {
    if (validate->parsed()) return stbench::cmd_validate(config, std::cout, std::cerr);
    if (generate->parsed())
      return stbench::cmd_generate(config, out_path, force, std::cout, std::cerr);
    if (run->parsed())
      return stbench::cmd_run(config, dataset_path, out_path, force, std::cout, std::cerr);
    if (analyze->parsed())
      return stbench::cmd_analyze(config, runlog_paths, out_path,
                                  *stbench::export_format_from_string(format_name), force,
                                  std::cout, std::cerr);
    if (all->parsed()) return stbench::cmd_all(config, workdir, force, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
