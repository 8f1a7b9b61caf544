#pragma once

#include <string_view>

namespace coss {

enum class LogLevel { Off = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

/// Active level, read once from the COSS_LOG environment variable
/// (off|error|warn|info|debug, case-insensitive). Default: warn.
LogLevel log_level();

bool log_enabled(LogLevel level);

/// Writes "[coss][level] message" to stderr when the level is enabled.
void log(LogLevel level, std::string_view message);

}  // namespace coss
