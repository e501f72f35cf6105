#pragma once

// Corpus-level highlighting rates for keyword calibration.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slrkit/highlighter.hpp"
#include "slrkit/metrics.hpp"

namespace slrkit {

struct RateBand {
  double center = 0.4;
  double half_width = 0.1;

  bool contains(double rate) const;  // inclusive, with a 1e-12 slack for rounding
};

struct DocumentRate {
  std::string id;
  std::size_t words = 0;
  std::size_t highlighted = 0;
  std::optional<double> rate;  // nullopt for a document without words
};

struct CalibrationReport {
  std::vector<DocumentRate> documents;  // in id order
  std::optional<MeanStd> summary;       // over documents with a rate
  bool in_band = false;
  RateBand band;
};

/// Word counts of a highlighted document: words (non-punctuation tokens) and
/// those inside a span.
DocumentRate document_rate(std::string id, const HighlightedDocument& doc);

/// Mean and band check over the documents that have a rate.
CalibrationReport summarize_rates(std::vector<DocumentRate> documents, RateBand band = {});

/// Highlights every document with `jobs` worker threads. The result does not
/// depend on `jobs`.
CalibrationReport calibrate(const std::map<std::string, std::string>& documents,
                            const KeywordSet& keywords, const VectorStore& store,
                            const Lexicon& lexicon, const SimilarityConfig& config = {},
                            unsigned jobs = 1, RateBand band = {});

nlohmann::ordered_json calibration_to_json(const CalibrationReport& report);

}  // namespace slrkit
