#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "slrkit/error.hpp"
#include "slrkit/lexicon.hpp"

namespace test_support {

inline std::filesystem::path fixture(std::string_view name) {
  return std::filesystem::path(SLRKIT_FIXTURE_DIR) / name;
}

// WordNet 3.0 is loaded once per test binary.
inline const slrkit::Lexicon& wordnet() {
  static const slrkit::Lexicon lex = slrkit::Lexicon::load(SLRKIT_WORDNET_DIR);
  return lex;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("slrkit-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Collects warnings for the lifetime of the object.
class WarningCapture {
 public:
  WarningCapture() {
    previous_ = slrkit::set_warning_handler(
        [this](std::string_view msg) { messages.emplace_back(msg); });
  }
  ~WarningCapture() { slrkit::set_warning_handler(previous_); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> messages;

 private:
  slrkit::WarningHandler previous_;
};

}  // namespace test_support
