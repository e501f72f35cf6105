#include "slrkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "slrkit/error.hpp"
#include "slrkit/tagging.hpp"
#include "unicode.hpp"

namespace slrkit {

MeanStd mean_std(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean_std of an empty series");
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  MeanStd out;
  out.mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / n);
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("pearson: series of different length (" +
                                std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) +
                                ")");
  }
  if (xs.size() < 2) throw std::invalid_argument("pearson needs at least 2 pairs");
  const double mx = mean_std(xs).mean;
  const double my = mean_std(ys).mean;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("pearson: constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationEstimate fisher_uncertainty(double r, std::size_t n, double z) {
  if (!(std::abs(r) < 1.0)) {
    throw UndefinedCorrelation("fisher bounds are degenerate for |r| = 1");
  }
  if (n < 4) throw std::invalid_argument("fisher bounds need n >= 4, got " + std::to_string(n));
  if (!(z > 0.0)) throw std::invalid_argument("z must be positive");
  CorrelationEstimate e;
  e.r = r;
  e.n = n;
  e.z = z;
  const double half = z / std::sqrt(static_cast<double>(n - 3));
  e.lower = std::tanh(std::atanh(r) - half);
  e.upper = std::tanh(std::atanh(r) + half);
  e.scaled_uncertainty = (e.upper - e.lower) / (2.0 * z);
  e.literal_lower = e.lower / z;
  e.literal_upper = e.upper / z;
  return e;
}

CorrelationEstimate highlight_correlation(std::span<const double> expert_rates,
                                          std::span<const double> model_rates, double z) {
  const double r = pearson(expert_rates, model_rates);
  const std::size_t n = expert_rates.size();
  if (std::abs(r) >= 1.0 || n < 4) {
    CorrelationEstimate e;
    e.r = r;
    e.n = n;
    e.z = z;
    e.interval_defined = false;
    e.lower = e.upper = r;
    e.literal_lower = e.literal_upper = r / z;
    return e;
  }
  return fisher_uncertainty(r, n, z);
}

double mean_vector_similarity(std::string_view a, std::string_view b, const VectorStore& store,
                              const MeanVectorOptions& options) {
  auto words = [&](std::string_view text) {
    std::vector<std::string> out;
    for (auto span : tokenize(text)) {
      std::string w(text.substr(span.start, span.size()));
      out.push_back(options.case_fold ? detail::lowercase(w) : std::move(w));
    }
    return out;
  };
  auto wa = words(a);
  auto wb = words(b);
  return cosine(mean_vector(wa, store).mean, mean_vector(wb, store).mean);
}

double sentence_embedding_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  return cosine(a, b);
}

double rescale(double score, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("rescale needs lo < hi");
  return std::clamp((score - lo) / (hi - lo), 0.0, 1.0);
}

double false_positive_rate(const Confusion& c) {
  if (c.fp + c.tn == 0) throw UndefinedRate("false positive rate with no negatives");
  return static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
}

double false_negative_rate(const Confusion& c) {
  if (c.fn + c.tp == 0) throw UndefinedRate("false negative rate with no positives");
  return static_cast<double>(c.fn) / static_cast<double>(c.fn + c.tp);
}

ConfusionRates confusion_rates(const Confusion& c) {
  ConfusionRates out;
  if (c.fp + c.tn > 0) out.false_positive_rate = false_positive_rate(c);
  if (c.fn + c.tp > 0) out.false_negative_rate = false_negative_rate(c);
  return out;
}

}  // namespace slrkit
