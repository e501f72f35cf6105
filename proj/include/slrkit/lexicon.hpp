#pragma once

// In-memory WordNet graph: synsets, hypernym edges, lemma relations and
// Wu-Palmer similarity. Reads the standard WordNet 3.x database layout
// (index.{noun,verb,adj,adv}, data.{noun,verb,adj,adv}).

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slrkit {

enum class PartOfSpeech : std::uint8_t { Noun = 0, Verb = 1, Adjective = 2, Adverb = 3 };

inline constexpr std::array<PartOfSpeech, 4> kAllPartsOfSpeech = {
    PartOfSpeech::Noun, PartOfSpeech::Verb, PartOfSpeech::Adjective, PartOfSpeech::Adverb};

std::string_view to_string(PartOfSpeech pos);
/// Single-letter database code: n, v, a, r.
char pos_letter(PartOfSpeech pos);
/// Accepts n, v, a, s (adjective satellite) and r.
std::optional<PartOfSpeech> parse_pos_letter(char letter);
/// Accepts "noun", "verb", "adjective"/"adj", "adverb"/"adv".
std::optional<PartOfSpeech> parse_pos_name(std::string_view name);

struct SynsetId {
  PartOfSpeech pos = PartOfSpeech::Noun;
  std::uint32_t offset = 0;

  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;
};

std::string to_string(const SynsetId& id);  // e.g. "02084071-n"

struct SynsetIdHash {
  std::size_t operator()(const SynsetId& id) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{id.offset} << 2) |
                                      static_cast<std::uint64_t>(id.pos));
  }
};

/// A lemma inside a synset, addressed by its position in the synset's lemma list.
struct LemmaRef {
  SynsetId synset;
  std::uint16_t lemma_index = 0;

  friend auto operator<=>(const LemmaRef&, const LemmaRef&) = default;
};

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;     // lowercase, underscores for spaces
  std::vector<SynsetId> hypernyms;     // includes instance hypernyms
  std::string gloss;
};

/// Lexical pointers from one lemma of a synset to lemmas of other synsets.
struct LemmaRelationTable {
  std::vector<std::pair<LemmaRef, LemmaRef>> pertainyms;
  std::vector<std::pair<LemmaRef, LemmaRef>> related_forms;
};

class Lexicon {
 public:
  /// Loads a WordNet database directory. Throws LoadError naming the missing
  /// file, or the file and line of a malformed record. A hypernym edge that
  /// closes a cycle is dropped with a warning.
  static Lexicon load(const std::filesystem::path& dir);

  /// Builds a lexicon from explicit synsets. The lemma index lists each
  /// synset under its lemmas in the order given. Throws std::invalid_argument
  /// on dangling references or hypernym cycles.
  static Lexicon from_synsets(std::vector<Synset> synsets, LemmaRelationTable relations = {});

  /// Sense-ordered synsets for a canonical lemma; empty when unknown.
  std::span<const SynsetId> synsets_of(std::string_view lemma, PartOfSpeech pos) const;
  bool contains(std::string_view lemma, PartOfSpeech pos) const;

  bool has_synset(const SynsetId& id) const;
  /// Throws std::out_of_range for an unknown id.
  const Synset& synset(const SynsetId& id) const;

  /// Longest hypernym path to a root, counting nodes; a root has depth 1.
  /// Throws std::out_of_range for an unknown id.
  int depth(const SynsetId& id) const;

  /// 2*depth(lcs) / (depth(a) + depth(b)) with lcs the deepest shared
  /// hypernym. Categories with several roots get a virtual shared root above
  /// them. Distinct adjective or adverb synsets score 0. Throws
  /// std::invalid_argument when a and b belong to different categories.
  double wu_palmer(const SynsetId& a, const SynsetId& b) const;

  std::span<const LemmaRef> pertainyms(const LemmaRef& lemma) const;
  std::span<const LemmaRef> related_forms(const LemmaRef& lemma) const;

  std::size_t synset_count() const noexcept { return synsets_.size(); }
  std::size_t hypernym_edge_count() const noexcept { return hypernym_edges_; }
  std::size_t root_count(PartOfSpeech pos) const noexcept {
    return roots_[static_cast<std::size_t>(pos)];
  }
  /// All synset ids of one category in database order.
  std::vector<SynsetId> synset_ids(PartOfSpeech pos) const;

 private:
  struct Node {
    Synset synset;
    int depth = 0;
    std::vector<std::vector<LemmaRef>> pertainyms;     // per lemma
    std::vector<std::vector<LemmaRef>> related_forms;  // per lemma
  };

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  using LemmaIndex =
      std::unordered_map<std::string, std::vector<SynsetId>, StringHash, std::equal_to<>>;

  Lexicon() = default;
  const Node& node(const SynsetId& id) const;
  void add_relation(std::vector<std::vector<LemmaRef>> Node::*table, const LemmaRef& from,
                    const LemmaRef& to);
  void finalize(bool break_cycles);
  std::vector<std::pair<SynsetId, int>> ancestors(const SynsetId& id) const;

  std::vector<Node> synsets_;
  std::unordered_map<SynsetId, std::size_t, SynsetIdHash> by_id_;
  std::array<LemmaIndex, 4> index_;
  std::array<std::size_t, 4> roots_{};
  std::size_t hypernym_edges_ = 0;
};

}  // namespace slrkit
