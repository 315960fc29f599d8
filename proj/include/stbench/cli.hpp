// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stbench/analysis.hpp"

namespace stbench {

// Subcommand bodies. Each validates its inputs before acting, writes
// human-readable progress to `out` and problems to `err`, and returns the
// process exit status: 0 success, 1 validation/config error, 2 runtime
// error. Existing output files are refused unless `force`.

int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err);

int cmd_generate(const std::string& config_path, const std::string& out_path, bool force,
                 std::ostream& out, std::ostream& err);

int cmd_run(const std::string& config_path, const std::string& dataset_path,
            const std::string& out_path, bool force, std::ostream& out, std::ostream& err);

int cmd_analyze(const std::string& config_path, const std::vector<std::string>& runlog_paths,
                const std::string& out_path, ExportFormat format, bool force,
                std::ostream& out, std::ostream& err);

int cmd_all(const std::string& config_path, const std::string& workdir, bool force,
            std::ostream& out, std::ostream& err);

}  // namespace stbench
