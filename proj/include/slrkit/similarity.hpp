#pragma once

// Keyword similarity: weighted synset extension, extended Wu-Palmer, vector
// fallback and the thresholded verdict.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slrkit/embeddings.hpp"
#include "slrkit/lexicon.hpp"

namespace slrkit {

struct SimilarityConfig {
  double p_weight = 0.95;
  double rf_weight = 0.95;
  double wup_threshold = 0.8;
  double vec_threshold = 0.95;

  /// Throws std::invalid_argument unless every field is in (0, 1].
  void validate() const;
  friend bool operator==(const SimilarityConfig&, const SimilarityConfig&) = default;
};

/// source --weight--> target
struct WeightedReach {
  SynsetId source;
  double weight = 1.0;
  SynsetId target;

  friend bool operator==(const WeightedReach&, const WeightedReach&) = default;
};

/// Reflexive pairs with weight 1 plus one step along pertainym (p_weight) and
/// derivationally related form (rf_weight) links of every lemma. Each target
/// appears once, with its maximum weight; order is first appearance.
std::vector<WeightedReach> extend(std::span<const SynsetId> synsets, const Lexicon& lexicon,
                                  const SimilarityConfig& config);

enum class VerdictKind { None, Wup, Vec };
std::string_view to_string(VerdictKind kind);  // "none", "wup", "vec"

/// The arg-max pair behind an extended Wu-Palmer score.
struct Witness {
  WeightedReach word;
  WeightedReach keyword;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct WupResult {
  double score = 0.0;
  std::optional<Witness> witness;
};

/// max over extend(synsets(w)) x extend(synsets(c)) of w_w * w_c * wu_palmer.
/// Pairs that end up in different categories score 0. 0 when either word
/// has no synsets.
WupResult wup_x_detailed(std::string_view w, PartOfSpeech w_pos, std::string_view c,
                         PartOfSpeech c_pos, const Lexicon& lexicon,
                         const SimilarityConfig& config);
double wup_x(std::string_view w, std::string_view c, PartOfSpeech t, const Lexicon& lexicon,
             const SimilarityConfig& config = {});

struct SimilarityVerdict {
  double score = 0.0;
  VerdictKind kind = VerdictKind::None;
  std::optional<std::string> matched_keyword;
  std::optional<Witness> witness;  // set for kind Wup
};

/// Extended Wu-Palmer wins when it reaches its threshold and is at least the
/// best vector score; otherwise the vector score when it reaches its own
/// threshold; otherwise none. Ties go to the earliest keyword.
SimilarityVerdict similarity(std::string_view w, std::span<const std::string> keywords,
                             PartOfSpeech t, const VectorStore& store, const Lexicon& lexicon,
                             const SimilarityConfig& config = {});

/// As above, with the keywords looked up in their own category (an
/// adjective inside a noun chunk compared with entity keywords).
SimilarityVerdict similarity(std::string_view w, PartOfSpeech w_pos,
                             std::span<const std::string> keywords, PartOfSpeech keyword_pos,
                             const VectorStore& store, const Lexicon& lexicon,
                             const SimilarityConfig& config = {});

}  // namespace slrkit
