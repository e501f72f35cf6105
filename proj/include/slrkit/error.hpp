#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace slrkit {

/// Base class for recoverable failures raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resource could not be read or parsed. Carries the offending file and,
/// for parse failures, the 1-based line number (0 when not line-specific).
class LoadError : public Error {
 public:
  LoadError(std::filesystem::path file, std::size_t line, const std::string& what);

  const std::filesystem::path& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::filesystem::path file_;
  std::size_t line_;
};

/// A similarity is undefined (zero vector, no in-vocabulary token).
class UndefinedSimilarity : public Error {
 public:
  using Error::Error;
};

/// A correlation is undefined (zero variance, degenerate bounds).
class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

/// A rate has an empty denominator.
class UndefinedRate : public Error {
 public:
  using Error::Error;
};

using WarningHandler = std::function<void(std::string_view)>;

// Warnings go to stderr unless a handler is installed. Returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace slrkit
