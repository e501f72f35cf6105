#pragma once

// JSON-over-HTTP service for interactive keyword calibration.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "slrkit/corpus.hpp"
#include "slrkit/embeddings.hpp"
#include "slrkit/lexicon.hpp"

namespace slrkit {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> ui_dir;
  std::size_t max_text_bytes = 1 << 20;  // POST /api/highlight text limit
  std::size_t memo_capacity = 512;
  unsigned jobs = 1;  // workers for corpus-wide statistics
};

struct ServiceResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Routes:
///   GET  /api/health
///   GET  /api/documents, /api/documents/{id}
///   GET  /api/keywords, PUT /api/keywords
///   GET  /api/history
///   POST /api/highlight  {"document_id"|"text", optional "keywords"}
///   GET  /api/stats
/// Reads run concurrently; keyword updates are serialized.
class CalibrationService {
 public:
  /// Loads the corpus, keywords and keyword history named by the project.
  /// Throws LoadError when any of them cannot be read.
  CalibrationService(const ProjectConfig& project, const Lexicon& lexicon, VectorStore store,
                     ServiceOptions options = {});
  ~CalibrationService();
  CalibrationService(const CalibrationService&) = delete;
  CalibrationService& operator=(const CalibrationService&) = delete;

  /// Dispatches one request without the network layer. Thread-safe.
  ServiceResponse handle(std::string_view method, std::string_view path, std::string_view body);

  /// Binds the listening socket and returns the port. Throws Error when the
  /// address cannot be bound.
  int bind();
  /// Serves until stop(). Requires bind().
  void listen();
  void stop();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace slrkit
