#include "slrkit/error.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace slrkit {

namespace {

std::string format_load_error(const std::filesystem::path& file, std::size_t line,
                              const std::string& what) {
  std::string out = file.string();
  if (line > 0) out += ":" + std::to_string(line);
  out += ": " + what;
  return out;
}

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler handler;
  return handler;
}

}  // namespace

LoadError::LoadError(std::filesystem::path file, std::size_t line, const std::string& what)
    : Error(format_load_error(file, line, what)), file_(std::move(file)), line_(line) {}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  return std::exchange(handler_slot(), std::move(handler));
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (auto& handler = handler_slot()) {
    handler(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace slrkit
