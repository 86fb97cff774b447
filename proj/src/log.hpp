#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace habitat {

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Verbosity from the HABITAT_LOG environment variable:
/// unset/"0"/"error" -> error, "1"/"info" -> info, "2"/"debug" -> debug.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("HABITAT_LOG");
        if (env == nullptr) return LogLevel::error;
        const std::string v(env);
        if (v == "2" || v == "debug") return LogLevel::debug;
        if (v == "1" || v == "info") return LogLevel::info;
        return LogLevel::error;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[habitat] " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::cerr << "[habitat:debug] " << msg << "\n";
}

}  // namespace habitat
