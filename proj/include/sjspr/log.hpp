#pragma once

// Minimal stderr logger. Verbosity comes from the SAGIN_JSPR_LOG environment
// variable: error | warn | info | debug (or 0..3). Default: warn.

#include <cstdio>
#include <cstdlib>
#include <string>

namespace sjspr::logging {

enum class Level : int { Error = 0, Warn = 1, Info = 2, Debug = 3 };

inline Level parse_level(const char* s) {
    if (!s) return Level::Warn;
    std::string v(s);
    if (v == "error" || v == "0") return Level::Error;
    if (v == "warn" || v == "1") return Level::Warn;
    if (v == "info" || v == "2") return Level::Info;
    if (v == "debug" || v == "3") return Level::Debug;
    return Level::Warn;
}

inline Level& level() {
    static Level lvl = parse_level(std::getenv("SAGIN_JSPR_LOG"));
    return lvl;
}

inline void emit(Level lvl, const char* tag, const std::string& msg) {
    if (static_cast<int>(lvl) <= static_cast<int>(level()))
        std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
}

inline void error(const std::string& msg) { emit(Level::Error, "error", msg); }
inline void warn(const std::string& msg) { emit(Level::Warn, "warn", msg); }
inline void info(const std::string& msg) { emit(Level::Info, "info", msg); }
inline void debug(const std::string& msg) { emit(Level::Debug, "debug", msg); }

}  // namespace sjspr::logging
