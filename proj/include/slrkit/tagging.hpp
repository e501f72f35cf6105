#pragma once

// Tokenizer, rule-based part-of-speech tagger, lemmatizer and noun chunker.
// Documents can also be read from a pretagged TSV file.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slrkit/lexicon.hpp"

namespace slrkit {

enum class Tag : std::uint8_t { Noun, Propn, Verb, Aux, Adj, Adv, Det, Punct, Other };

std::string_view to_string(Tag tag);  // "NOUN", "PROPN", ...
std::optional<Tag> parse_tag(std::string_view name);

/// Byte offsets [start, end) into the source text.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct TaggedToken {
  std::string text;
  std::string lemma;
  Tag tag = Tag::Other;
  CharSpan span;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

/// Tokens [first, last) with the head noun at `head` (always last - 1).
struct NounChunk {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t head = 0;

  friend bool operator==(const NounChunk&, const NounChunk&) = default;
};

struct TaggedDocument {
  std::string source;
  std::vector<TaggedToken> tokens;
  std::vector<NounChunk> chunks;
};

/// Same tokens (text, lemma, tag) and chunks; ignores source and offsets.
bool same_content(const TaggedDocument& a, const TaggedDocument& b);

/// Splits on whitespace and punctuation. Hyphens, apostrophes and decimal
/// points between word characters stay inside the word.
std::vector<CharSpan> tokenize(std::string_view text);

/// Suffix-stripping lemmatizer; a candidate is accepted only if the lexicon
/// lists it for the requested category.
class Lemmatizer {
 public:
  explicit Lemmatizer(const Lexicon& lexicon) : lexicon_(&lexicon) {}

  /// `word` must already be lowercase.
  std::optional<std::string> lemma(std::string_view word, PartOfSpeech pos) const;

 private:
  const Lexicon* lexicon_;
};

/// Runs the built-in tagger and the chunker.
TaggedDocument tag(std::string text, const Lexicon& lexicon);

/// Maximal runs of DET? (ADJ|NOUN|PROPN)* (NOUN|PROPN). A plural noun ends
/// the run, so "individuals nutritional status" gives two chunks.
std::vector<NounChunk> noun_chunks(const TaggedDocument& doc);

/// One "surface<TAB>lemma<TAB>TAG" line per token, blank line between
/// sentences. The source text is rebuilt by joining tokens with single
/// spaces and sentences with newlines. Throws LoadError with the line number
/// on a malformed line or unknown tag.
TaggedDocument parse_pretagged(std::istream& in, const std::filesystem::path& source_name);
TaggedDocument ingest_pretagged(const std::filesystem::path& path);
std::string export_pretagged(const TaggedDocument& doc);

}  // namespace slrkit
