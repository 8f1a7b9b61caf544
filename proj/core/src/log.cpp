#include "coss/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace coss {

namespace {

LogLevel parse_level(const char* value) {
    if (value == nullptr) return LogLevel::Warn;
    std::string v(value);
    for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "off" || v == "0" || v == "none") return LogLevel::Off;
    if (v == "error") return LogLevel::Error;
    if (v == "warn" || v == "warning") return LogLevel::Warn;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
}

const char* level_name(LogLevel level) {
    switch (level) {
        case LogLevel::Error: return "error";
        case LogLevel::Warn: return "warn";
        case LogLevel::Info: return "info";
        case LogLevel::Debug: return "debug";
        case LogLevel::Off: break;
    }
    return "off";
}

}  // namespace

LogLevel log_level() {
    static const LogLevel level = parse_level(std::getenv("COSS_LOG"));
    return level;
}

bool log_enabled(LogLevel level) {
    return static_cast<int>(level) <= static_cast<int>(log_level());
}

void log(LogLevel level, std::string_view message) {
    if (!log_enabled(level)) return;
    std::fprintf(stderr, "[coss][%s] %.*s\n", level_name(level),
                 static_cast<int>(message.size()), message.data());
}

}  // namespace coss
