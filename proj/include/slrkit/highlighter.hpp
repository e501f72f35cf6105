#pragma once

// Semantic highlighting of a tagged document against an E/R/P keyword set,
// with per-span explanations, the highlighting rate and renderers.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slrkit/embeddings.hpp"
#include "slrkit/lexicon.hpp"
#include "slrkit/similarity.hpp"
#include "slrkit/tagging.hpp"

namespace slrkit {

struct KeywordSet {
  std::vector<std::string> entities;    // nouns
  std::vector<std::string> relations;   // verbs
  std::vector<std::string> properties;  // adjectives or adverbs

  bool empty() const noexcept {
    return entities.empty() && relations.empty() && properties.empty();
  }
  std::size_t size() const noexcept {
    return entities.size() + relations.size() + properties.size();
  }
  friend bool operator==(const KeywordSet&, const KeywordSet&) = default;
};

enum class Role { Entity, Relation, Property, Support };
std::string_view to_string(Role role);  // "Entity", ...
std::optional<Role> parse_role(std::string_view name);

struct SimilarTo {
  std::string keyword;
  double score = 0.0;
  VerdictKind kind = VerdictKind::None;

  friend bool operator==(const SimilarTo&, const SimilarTo&) = default;
};

/// Noun chunk highlighted because of the listed parts.
struct NounChunkPart {
  std::string chunk_text;
  std::vector<SimilarTo> parts;

  friend bool operator==(const NounChunkPart&, const NounChunkPart&) = default;
};

/// Highlighted because token `target` is.
struct SupportOf {
  std::size_t target = 0;

  friend bool operator==(const SupportOf&, const SupportOf&) = default;
};

using Explanation = std::variant<SimilarTo, NounChunkPart, SupportOf>;

/// SimilarTo('disease', 0.95, 'wup') | NCP(text, [SimilarTo(...), ...]) | SupportOf(7)
std::string format_explanation(const Explanation& e);

/// Tokens [first, last). SupportOf spans carry the score of the span they support.
struct HighlightSpan {
  std::size_t first = 0;
  std::size_t last = 0;
  Role role = Role::Entity;
  double score = 0.0;
  Explanation explanation;

  friend bool operator==(const HighlightSpan&, const HighlightSpan&) = default;
};

struct HighlightedDocument {
  TaggedDocument doc;
  std::vector<HighlightSpan> spans;  // ordered, non-overlapping
  double rate = 0.0;                 // 0 when the document has no words
};

/// Nouns and noun chunks against entities, verbs against relations,
/// adjectives and adverbs against properties. Adjectives inside a noun chunk
/// are also tried against entities; unmatched adjectives of a highlighted
/// chunk become properties of it. Auxiliaries up to two tokens before a
/// highlighted relation become support words.
HighlightedDocument highlight(TaggedDocument doc, const KeywordSet& keywords,
                              const VectorStore& store, const Lexicon& lexicon,
                              const SimilarityConfig& config = {});

/// Explanation of the span covering `token`, or nullopt when the token is not
/// highlighted. Throws std::out_of_range for an invalid index.
std::optional<std::string> explain(const HighlightedDocument& doc, std::size_t token);

/// Highlighted words over all words (punctuation excluded). Throws
/// UndefinedRate when there are no words.
double highlighting_rate(const HighlightedDocument& doc);

enum class RenderFormat { Ansi, Html, Json };
std::optional<RenderFormat> parse_render_format(std::string_view name);

struct RenderOptions {
  bool explain = false;  // ansi/html: append one line per span
};

std::string render(const HighlightedDocument& doc, RenderFormat format,
                   const RenderOptions& options = {});

/// Inverse of the JSON renderer. Throws std::invalid_argument on bad input.
HighlightedDocument parse_highlight_json(std::string_view json);

}  // namespace slrkit
