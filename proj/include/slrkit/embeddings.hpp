#pragma once

// Word vectors in the plain-text "word v1 ... vd" format.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slrkit {

struct EmbeddingVector {
  std::vector<double> components;

  std::size_t dimension() const noexcept { return components.size(); }
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

class VectorStore {
 public:
  VectorStore() = default;
  explicit VectorStore(std::size_t dimension) : dimension_(dimension) {}

  /// 0 for a store that has never seen a vector.
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return table_.size(); }
  bool empty() const noexcept { return table_.empty(); }

  /// Case-sensitive lookup; nullptr when absent.
  const EmbeddingVector* find(std::string_view word) const;

  /// Inserts or replaces. Fixes the dimension on first insert; throws
  /// std::invalid_argument on a dimension mismatch or non-finite component.
  /// Returns true when an existing entry was replaced.
  bool insert(std::string word, EmbeddingVector vector);

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, EmbeddingVector, StringHash, std::equal_to<>> table_;
};

/// Parses a vector file. An optional "count dim" header line is skipped.
/// Duplicate words: last entry wins, with a warning. Throws LoadError on an
/// empty file or a line whose dimension differs from the first entry.
VectorStore load_vectors(const std::filesystem::path& path);
VectorStore parse_vectors(std::istream& in, const std::filesystem::path& source_name);

/// dot(a,b) / (|a| |b|). Throws std::invalid_argument on a dimension
/// mismatch and UndefinedSimilarity when either vector is zero.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

struct MeanVector {
  EmbeddingVector mean;
  std::size_t used = 0;
  std::size_t skipped = 0;  // out-of-vocabulary words
};

/// Component-wise mean over the in-vocabulary words. Throws
/// UndefinedSimilarity when none of the words has a vector.
MeanVector mean_vector(std::span<const std::string> words, const VectorStore& store);

/// 1 when w == c, else cosine of the two vectors clamped below at 0, else 0.
double vec_similarity(std::string_view w, std::string_view c, const VectorStore& store);

}  // namespace slrkit
