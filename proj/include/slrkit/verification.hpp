#pragma once

// Quote audit: text normalization, Levenshtein ratio and fuzzy location of a
// quote inside its source document.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "slrkit/evidence.hpp"
#include "slrkit/lexicon.hpp"

namespace slrkit {

/// NFKC, soft hyphens dropped, dashes to '-', curly quotes and primes to
/// straight ones, end-of-line hyphenation joined, whitespace collapsed and
/// trimmed. Case is preserved. A hyphenated line break is joined without the
/// hyphen when the lexicon knows the joined word and kept otherwise; without a
/// lexicon it is joined when both sides are lowercase letters. Idempotent.
std::string normalize(std::string_view text, const Lexicon* lexicon = nullptr);

/// Edit distance over code points.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

/// round(100 * (1 - distance / longer length)); 100 for two empty strings.
int ratio(std::string_view a, std::string_view b, bool case_fold = false);
int ratio_from_distance(std::size_t distance, std::size_t longer_length);

enum class Verdict { Pass, Flagged };
std::string_view to_string(Verdict v);  // "pass", "flagged"

struct MatchOptions {
  int threshold = 90;  // pass when score >= threshold
  bool case_fold = false;
};

struct MatchResult {
  int score = 0;
  std::size_t start = 0;  // code points into the normalized document
  std::size_t end = 0;
  std::string matched_text;
  std::string normalized_quote;
  Verdict verdict = Verdict::Flagged;
};

/// Best ratio over windows that start and end on token boundaries and whose
/// length is within 20% of the quote's; leftmost window wins ties. A document
/// shorter than any window is compared whole. Both inputs must already be
/// normalized. Throws std::invalid_argument for an empty quote.
MatchResult best_match(std::string_view quote, std::string_view document,
                       const MatchOptions& options = {});

enum class MatchScope { Slice, Document };
std::string_view to_string(MatchScope s);  // "slice", "document"

struct QuoteCheck {
  std::string quote;
  MatchResult match;
  MatchScope scope = MatchScope::Document;  // what match.start/end index into
};

struct EvidenceAudit {
  std::string record_id;
  std::vector<QuoteCheck> quotes;
  double mean_score = 0.0;
  bool flagged = false;  // mean_score < threshold
};

struct VerifyOptions {
  MatchOptions match;
  const Lexicon* lexicon = nullptr;  // for dehyphenation
};

/// Matches every quote inside the record's source slice first and in the
/// whole document when that scores better. Throws std::invalid_argument for a
/// record without quotes or with a quote that is empty after normalization.
EvidenceAudit verify_evidence(const EvidenceRecord& record, std::string_view document,
                              const VerifyOptions& options = {});

}  // namespace slrkit
