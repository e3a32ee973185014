#include "twocenter/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace twocenter {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("TWOCENTER_LOG");
        if (!env) return LogLevel::off;
        const std::string value(env);
        if (value == "debug") return LogLevel::debug;
        if (value == "info") return LogLevel::info;
        return LogLevel::off;
    }();
    return level;
}

namespace {
std::mutex log_mutex;
void emit(const char* tag, const std::string& msg) {
    std::lock_guard<std::mutex> lock(log_mutex);
    std::cerr << "[twocenter " << tag << "] " << msg << '\n';
}
}  // namespace

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) emit("info", msg);
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) emit("debug", msg);
}

}  // namespace twocenter
