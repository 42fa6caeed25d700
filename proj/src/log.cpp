#include "btiepi/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace btiepi {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("BTIEPI_LOG");
    if (!env) return LogLevel::Warn;
    if (std::strcmp(env, "error") == 0) return LogLevel::Error;
    if (std::strcmp(env, "warn") == 0) return LogLevel::Warn;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    return LogLevel::Warn;
  }();
  return level;
}

void log_msg(LogLevel level, const std::string& message) {
  if (level > log_level()) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[btiepi %s] %s\n", names[static_cast<int>(level)], message.c_str());
}

}  // namespace btiepi
