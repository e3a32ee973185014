#pragma once

#include <string>

namespace twocenter {

enum class LogLevel { off = 0, info = 1, debug = 2 };

/// Level parsed once from the TWOCENTER_LOG environment variable
/// ("info", "debug"; anything else disables logging).
LogLevel log_level();

void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace twocenter
