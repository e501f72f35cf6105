#pragma once

// Agreement statistics between model and expert answers.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "slrkit/embeddings.hpp"

namespace slrkit {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population (divide by n)
};

/// Throws std::invalid_argument on an empty series.
MeanStd mean_std(std::span<const double> xs);

/// Product-moment correlation. Throws std::invalid_argument for series of
/// different or fewer than 2 elements, UndefinedCorrelation when either
/// series is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct CorrelationEstimate {
  double r = 0.0;
  std::size_t n = 0;
  double z = 1.96;
  bool interval_defined = true;  // false for |r| = 1 or n < 4; bounds collapse to r
  double lower = 0.0;            // tanh(atanh r - z / sqrt(n - 3))
  double upper = 0.0;            // tanh(atanh r + z / sqrt(n - 3))
  double scaled_uncertainty = 0.0;  // (upper - lower) / (2 z), comparable to a std
  double literal_lower = 0.0;       // lower / z, the bound divided by z as a diagnostic
  double literal_upper = 0.0;       // upper / z
};

/// Fisher-transform confidence bounds. Throws UndefinedCorrelation for
/// |r| >= 1 and std::invalid_argument for n < 4 or z <= 0.
CorrelationEstimate fisher_uncertainty(double r, std::size_t n, double z = 1.96);

/// pearson plus fisher_uncertainty over paired highlighting rates. A perfect
/// correlation or fewer than 4 pairs gives an estimate without an interval.
/// Throws as pearson.
CorrelationEstimate highlight_correlation(std::span<const double> expert_rates,
                                          std::span<const double> model_rates, double z = 1.96);

struct MeanVectorOptions {
  bool case_fold = false;  // look tokens up lowercased
};

/// Cosine of the token-average vectors of two texts. Throws
/// UndefinedSimilarity when either text has no in-vocabulary token.
double mean_vector_similarity(std::string_view a, std::string_view b, const VectorStore& store,
                              const MeanVectorOptions& options = {});

/// Cosine of two precomputed sentence embeddings.
double sentence_embedding_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

/// clamp((score - lo) / (hi - lo), 0, 1). Throws std::invalid_argument unless lo < hi.
double rescale(double score, double lo = 0.7, double hi = 1.0);

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct ConfusionRates {
  std::optional<double> false_positive_rate;  // fp / (fp + tn)
  std::optional<double> false_negative_rate;  // fn / (fn + tp)
};

ConfusionRates confusion_rates(const Confusion& c);

/// Throw UndefinedRate when the denominator is empty.
double false_positive_rate(const Confusion& c);
double false_negative_rate(const Confusion& c);

}  // namespace slrkit
