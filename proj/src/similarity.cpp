#include "slrkit/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace slrkit {

void SimilarityConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must be in (0, 1], got " +
                                  std::to_string(v));
    }
  };
  check(p_weight, "p_weight");
  check(rf_weight, "rf_weight");
  check(wup_threshold, "wup_threshold");
  check(vec_threshold, "vec_threshold");
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Wup: return "wup";
    case VerdictKind::Vec: return "vec";
    case VerdictKind::None: break;
  }
  return "none";
}

std::vector<WeightedReach> extend(std::span<const SynsetId> synsets, const Lexicon& lexicon,
                                  const SimilarityConfig& config) {
  std::vector<WeightedReach> out;
  auto add = [&](const SynsetId& source, double weight, const SynsetId& target) {
    for (auto& r : out) {
      if (r.target == target) {
        if (weight > r.weight) r = {source, weight, target};
        return;
      }
    }
    out.push_back({source, weight, target});
  };
  for (const auto& s : synsets) {
    add(s, 1.0, s);
    const auto& syn = lexicon.synset(s);
    for (std::uint16_t l = 0; l < syn.lemmas.size(); ++l) {
      for (const auto& t : lexicon.pertainyms({s, l})) add(s, config.p_weight, t.synset);
      for (const auto& t : lexicon.related_forms({s, l})) add(s, config.rf_weight, t.synset);
    }
  }
  return out;
}

namespace {

WupResult best_pair(const std::vector<WeightedReach>& sw, const std::vector<WeightedReach>& sc,
                    const Lexicon& lexicon) {
  WupResult best;
  for (const auto& rw : sw) {
    for (const auto& rc : sc) {
      if (rw.target.pos != rc.target.pos) continue;
      double upper = rw.weight * rc.weight;
      if (upper <= best.score) continue;
      double s = upper * lexicon.wu_palmer(rw.target, rc.target);
      if (s > best.score) {
        best.score = s;
        best.witness = Witness{rw, rc};
      }
    }
  }
  return best;
}

}  // namespace

WupResult wup_x_detailed(std::string_view w, PartOfSpeech w_pos, std::string_view c,
                         PartOfSpeech c_pos, const Lexicon& lexicon,
                         const SimilarityConfig& config) {
  auto syn_w = lexicon.synsets_of(w, w_pos);
  auto syn_c = lexicon.synsets_of(c, c_pos);
  if (syn_w.empty() || syn_c.empty()) return {};
  return best_pair(extend(syn_w, lexicon, config), extend(syn_c, lexicon, config), lexicon);
}

double wup_x(std::string_view w, std::string_view c, PartOfSpeech t, const Lexicon& lexicon,
             const SimilarityConfig& config) {
  return wup_x_detailed(w, t, c, t, lexicon, config).score;
}

SimilarityVerdict similarity(std::string_view w, std::span<const std::string> keywords,
                             PartOfSpeech t, const VectorStore& store, const Lexicon& lexicon,
                             const SimilarityConfig& config) {
  return similarity(w, t, keywords, t, store, lexicon, config);
}

SimilarityVerdict similarity(std::string_view w, PartOfSpeech w_pos,
                             std::span<const std::string> keywords, PartOfSpeech keyword_pos,
                             const VectorStore& store, const Lexicon& lexicon,
                             const SimilarityConfig& config) {
  double best_wup = 0.0;
  double best_vec = 0.0;
  const std::string* wup_keyword = nullptr;
  const std::string* vec_keyword = nullptr;
  std::optional<Witness> witness;

  auto syn_w = lexicon.synsets_of(w, w_pos);
  const auto ext_w = syn_w.empty() ? std::vector<WeightedReach>{} : extend(syn_w, lexicon, config);

  for (const auto& c : keywords) {
    if (!ext_w.empty()) {
      auto syn_c = lexicon.synsets_of(c, keyword_pos);
      if (!syn_c.empty()) {
        auto r = best_pair(ext_w, extend(syn_c, lexicon, config), lexicon);
        if (r.score > best_wup) {
          best_wup = r.score;
          wup_keyword = &c;
          witness = r.witness;
        }
      }
    }
    double v = vec_similarity(w, c, store);
    if (v > best_vec) {
      best_vec = v;
      vec_keyword = &c;
    }
  }

  SimilarityVerdict out;
  if (best_wup >= config.wup_threshold && best_wup >= best_vec && wup_keyword != nullptr) {
    out.score = best_wup;
    out.kind = VerdictKind::Wup;
    out.matched_keyword = *wup_keyword;
    out.witness = witness;
  } else if (best_vec >= config.vec_threshold && vec_keyword != nullptr) {
    out.score = best_vec;
    out.kind = VerdictKind::Vec;
    out.matched_keyword = *vec_keyword;
  }
  return out;
}

}  // namespace slrkit
