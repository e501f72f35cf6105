#include "slrkit/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "slrkit/error.hpp"
#include "text_util.hpp"

namespace slrkit {

const EmbeddingVector* VectorStore::find(std::string_view word) const {
  auto it = table_.find(word);
  return it == table_.end() ? nullptr : &it->second;
}

bool VectorStore::insert(std::string word, EmbeddingVector vector) {
  if (vector.dimension() == 0) throw std::invalid_argument("empty embedding vector");
  if (dimension_ == 0) dimension_ = vector.dimension();
  if (vector.dimension() != dimension_) {
    throw std::invalid_argument("embedding for '" + word + "' has dimension " +
                                std::to_string(vector.dimension()) + ", store has " +
                                std::to_string(dimension_));
  }
  for (double c : vector.components) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite component for '" + word + "'");
  }
  auto [it, inserted] = table_.insert_or_assign(std::move(word), std::move(vector));
  return !inserted;
}

VectorStore parse_vectors(std::istream& in, const std::filesystem::path& source_name) {
  VectorStore store;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = detail::split_ws(line);
    if (fields.empty()) continue;
    if (!seen_content) {
      seen_content = true;
      if (fields.size() == 2 && detail::parse_int<std::size_t>(fields[0]) &&
          detail::parse_int<std::size_t>(fields[1])) {
        continue;  // "count dim" header
      }
    }
    if (fields.size() < 2) throw LoadError(source_name, line_no, "entry has no components");
    EmbeddingVector v;
    v.components.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto value = detail::parse_double(fields[i]);
      if (!value || !std::isfinite(*value)) {
        throw LoadError(source_name, line_no, "bad component '" + std::string(fields[i]) + "'");
      }
      v.components.push_back(*value);
    }
    if (store.dimension() != 0 && v.dimension() != store.dimension()) {
      throw LoadError(source_name, line_no,
                      "inconsistent dimension " + std::to_string(v.dimension()) + ", expected " +
                          std::to_string(store.dimension()));
    }
    std::string word(fields[0]);
    if (store.insert(word, std::move(v))) {
      warn(source_name.string() + ":" + std::to_string(line_no) + ": duplicate vector for '" +
           word + "', keeping the last one");
    }
  }
  if (store.empty()) throw LoadError(source_name, 0, "no vectors in file");
  return store;
}

VectorStore load_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, 0, "cannot open vector file");
  return parse_vectors(in, path);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("cosine of vectors with dimensions " +
                                std::to_string(a.dimension()) + " and " +
                                std::to_string(b.dimension()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    dot += a.components[i] * b.components[i];
    na += a.components[i] * a.components[i];
    nb += b.components[i] * b.components[i];
  }
  if (na == 0.0 || nb == 0.0) throw UndefinedSimilarity("cosine of a zero vector");
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

MeanVector mean_vector(std::span<const std::string> words, const VectorStore& store) {
  MeanVector out;
  out.mean.components.assign(store.dimension(), 0.0);
  for (const auto& w : words) {
    const EmbeddingVector* v = store.find(w);
    if (v == nullptr) {
      ++out.skipped;
      continue;
    }
    for (std::size_t i = 0; i < v->dimension(); ++i) out.mean.components[i] += v->components[i];
    ++out.used;
  }
  if (out.used == 0) throw UndefinedSimilarity("no in-vocabulary word");
  for (double& c : out.mean.components) c /= static_cast<double>(out.used);
  return out;
}

double vec_similarity(std::string_view w, std::string_view c, const VectorStore& store) {
  if (w == c) return 1.0;
  const EmbeddingVector* vw = store.find(w);
  const EmbeddingVector* vc = store.find(c);
  if (vw == nullptr || vc == nullptr) return 0.0;
  try {
    return std::max(0.0, cosine(*vw, *vc));
  } catch (const UndefinedSimilarity&) {
    return 0.0;
  }
}

}  // namespace slrkit
