// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <string>

namespace stbench {

enum class LogLevel { error = 0, info = 1, debug = 2 };

// Process-wide log threshold. Library default is `error` so embedding code
// and tests stay quiet; the CLI raises it from the STBENCH_LOG environment
// variable (error|info|debug, default info).
void set_log_level(LogLevel level);
LogLevel log_level();
LogLevel log_level_from_env();

// Timestamped line to stderr when `level` is within the threshold.
void log_line(LogLevel level, const std::string& message);

inline void log_error(const std::string& message) { log_line(LogLevel::error, message); }
inline void log_info(const std::string& message) { log_line(LogLevel::info, message); }
inline void log_debug(const std::string& message) { log_line(LogLevel::debug, message); }

}  // namespace stbench
