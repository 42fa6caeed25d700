#pragma once

#include <string>

namespace btiepi {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Level from the BTIEPI_LOG environment variable (error|warn|info|debug), read once.
LogLevel log_level();

void log_msg(LogLevel level, const std::string& message);

inline void log_error(const std::string& m) { log_msg(LogLevel::Error, m); }
inline void log_warn(const std::string& m) { log_msg(LogLevel::Warn, m); }
inline void log_info(const std::string& m) { log_msg(LogLevel::Info, m); }
inline void log_debug(const std::string& m) { log_msg(LogLevel::Debug, m); }

}  // namespace btiepi
