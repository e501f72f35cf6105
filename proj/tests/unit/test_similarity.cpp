#include <random>
#include <stdexcept>

#include "doctest.h"
#include "slrkit/similarity.hpp"
#include "support.hpp"

using namespace slrkit;
using test_support::fixture;
using test_support::wordnet;

namespace {

constexpr auto N = PartOfSpeech::Noun;
constexpr auto V = PartOfSpeech::Verb;
constexpr auto A = PartOfSpeech::Adjective;

const Lexicon& mini() {
  static const Lexicon lex = Lexicon::load(fixture("lexicon_mini"));
  return lex;
}

VectorStore store_of(std::initializer_list<std::pair<const char*, EmbeddingVector>> entries) {
  VectorStore store;
  for (const auto& [w, v] : entries) store.insert(w, v);
  return store;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(SimilarityConfig{}.validate());
  CHECK_NOTHROW((SimilarityConfig{1.0, 1.0, 1.0, 1.0}.validate()));
  CHECK_THROWS_AS((SimilarityConfig{0.0, 0.95, 0.8, 0.95}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SimilarityConfig{0.95, 1.2, 0.8, 0.95}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SimilarityConfig{0.95, 0.95, -0.1, 0.95}.validate()), std::invalid_argument);
}

TEST_CASE("extend") {
  const auto& lex = mini();
  SimilarityConfig cfg;

  SUBCASE("pertainym and related form to the same target keep one entry") {
    auto ext = extend(lex.synsets_of("environmental", A), lex, cfg);
    REQUIRE(ext.size() == 2);
    CHECK(ext[0] == WeightedReach{{A, 1100}, 1.0, {A, 1100}});
    CHECK(ext[1] == WeightedReach{{A, 1100}, 0.95, {N, 500}});
  }
  SUBCASE("weights follow the config") {
    SimilarityConfig c{0.5, 0.7, 0.8, 0.95};
    auto ext = extend(lex.synsets_of("environmental", A), lex, c);
    REQUIRE(ext.size() == 2);
    CHECK(ext[1].weight == 0.7);
  }
  SUBCASE("no links") {
    auto ext = extend(lex.synsets_of("cat", N), lex, cfg);
    CHECK(ext == std::vector<WeightedReach>{{{N, 400}, 1.0, {N, 400}}});
  }
  SUBCASE("empty input") { CHECK(extend({}, lex, cfg).empty()); }
}

TEST_CASE("extended Wu-Palmer on the mini lexicon") {
  const auto& lex = mini();
  CHECK(wup_x("dog", "cat", N, lex) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
  CHECK(wup_x("domestic_dog", "dog", N, lex) == 1.0);
  CHECK(wup_x("affect", "influence", V, lex) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
  CHECK(wup_x("unknown", "dog", N, lex) == 0.0);
  CHECK(wup_x("green", "verdant", A, lex) == 0.0);

  SUBCASE("across categories through a pertainym") {
    auto r = wup_x_detailed("environmental", A, "environment", N, lex, {});
    CHECK(r.score == doctest::Approx(0.95).epsilon(1e-12));
    REQUIRE(r.witness.has_value());
    // Ties keep the first pair: the adjective itself against the keyword's
    // related form, before environment against environment.
    CHECK(r.witness->word == WeightedReach{{A, 1100}, 1.0, {A, 1100}});
    CHECK(r.witness->keyword == WeightedReach{{N, 500}, 0.95, {A, 1100}});
    // environment(2) against entity(1): 2 * 1 / 3, one weighted step.
    CHECK(wup_x_detailed("environmental", A, "entity", N, lex, {}).score ==
          doctest::Approx(0.95 * 2.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("two verb roots meet at the virtual root") {
    // explain(2) and change(2) under a shared root of depth 1. The noun forms
    // reach the same 0.5 but only with weight 0.95.
    CHECK(wup_x("explain", "change", V, lex) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(wup_x_detailed("explain", V, "change", V, lex, {}).witness->word.weight == 1.0);
  }
}

TEST_CASE("similarity verdicts") {
  const auto& lex = mini();
  std::vector<std::string> kw{"cat", "entity"};

  SUBCASE("below both thresholds") {
    auto v = similarity("dog", kw, N, VectorStore{}, lex);
    CHECK(v.kind == VerdictKind::None);
    CHECK(v.score == 0.0);
    CHECK_FALSE(v.matched_keyword.has_value());
  }
  SUBCASE("vector fallback") {
    auto store = store_of({{"dog", EmbeddingVector{{1.0, 0.0}}}, {"cat", EmbeddingVector{{0.99, 0.1}}}});
    auto v = similarity("dog", kw, N, store, lex);
    CHECK(v.kind == VerdictKind::Vec);
    CHECK(v.score == doctest::Approx(0.99 / std::sqrt(0.9901)).epsilon(1e-12));
    CHECK(v.matched_keyword == "cat");
    CHECK_FALSE(v.witness.has_value());
  }
  SUBCASE("vector beats a weaker wup above threshold") {
    auto store = store_of({{"dog", EmbeddingVector{{1.0, 0.0}}}, {"cat", EmbeddingVector{{0.99, 0.1}}}});
    SimilarityConfig cfg{0.95, 0.95, 0.6, 0.95};
    CHECK(similarity("dog", kw, N, store, lex, cfg).kind == VerdictKind::Vec);
    auto v = similarity("dog", kw, N, VectorStore{}, lex, cfg);
    CHECK(v.kind == VerdictKind::Wup);
    CHECK(v.score == doctest::Approx(4.0 / 6.0));
    CHECK(v.matched_keyword == "cat");
  }
  SUBCASE("identical word") {
    std::vector<std::string> k{"dog", "domestic_dog"};
    auto v = similarity("dog", k, N, VectorStore{}, lex);
    CHECK(v.kind == VerdictKind::Wup);
    CHECK(v.score == 1.0);
    CHECK(v.matched_keyword == "dog");
  }
  SUBCASE("word outside the lexicon matches itself by vector rule") {
    std::vector<std::string> k{"agrifood"};
    auto v = similarity("agrifood", k, N, VectorStore{}, lex);
    CHECK(v.kind == VerdictKind::Vec);
    CHECK(v.score == 1.0);
  }
  SUBCASE("empty keyword list") {
    CHECK(similarity("dog", std::vector<std::string>{}, N, VectorStore{}, lex).kind ==
          VerdictKind::None);
  }
}

TEST_CASE("scores on WordNet 3.0") {
  const auto& wn = wordnet();
  // Frozen from tests/oracles/wordnet_oracle.py.
  CHECK(wup_x("illness", "disease", N, wn) == doctest::Approx(0.9473684210526315).epsilon(1e-12));
  CHECK(wup_x("influence", "affect", V, wn) == doctest::Approx(0.8571428571428571).epsilon(1e-12));
  CHECK(wup_x("status", "health", N, wn) == doctest::Approx(0.9090909090909091).epsilon(1e-12));
  CHECK(wup_x("fuel", "stimulate", V, wn) == doctest::Approx(0.8888888888888888).epsilon(1e-12));
  CHECK(wup_x("contribute", "improve", V, wn) == doctest::Approx(0.9025).epsilon(1e-12));
  auto r = wup_x_detailed("nutritional", A, "food", N, wn, {});
  CHECK(r.score == doctest::Approx(0.8636363636363635).epsilon(1e-12));
  REQUIRE(r.witness.has_value());
  CHECK(to_string(r.witness->word.target) == "07570720-n");

  std::vector<std::string> E{"health", "disease", "outcome", "food", "lifestyle"};
  auto v = similarity("illness", E, N, VectorStore{}, wn);
  CHECK(v.kind == VerdictKind::Wup);
  CHECK(v.matched_keyword == "disease");
}

TEST_CASE("verdict properties on random WordNet words") {
  const auto& wn = wordnet();
  std::mt19937 rng(20241018);
  for (auto pos : {N, V, A}) {
    auto ids = wn.synset_ids(pos);
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    auto random_word = [&] {
      const auto& s = wn.synset(ids[pick(rng)]);
      return s.lemmas[rng() % s.lemmas.size()];
    };
    for (int trial = 0; trial < 150; ++trial) {
      auto w = random_word();
      std::vector<std::string> kw;
      for (int i = 0; i < 4; ++i) kw.push_back(random_word());
      auto v = similarity(w, kw, pos, VectorStore{}, wn);
      CHECK(v.score >= 0.0);
      CHECK(v.score <= 1.0);
      if (v.kind != VerdictKind::None) {
        CHECK(v.score >= 0.8);
        REQUIRE(v.matched_keyword.has_value());
        CHECK(std::find(kw.begin(), kw.end(), *v.matched_keyword) != kw.end());
      } else {
        CHECK(v.score == 0.0);
      }
      // A keyword set containing the word itself always matches fully.
      kw.push_back(w);
      CHECK(similarity(w, kw, pos, VectorStore{}, wn).score == 1.0);
      // Symmetry of the underlying extended score.
      CHECK(wup_x(w, kw[0], pos, wn) == doctest::Approx(wup_x(kw[0], w, pos, wn)).epsilon(1e-12));
    }
  }
}

TEST_CASE("adding keywords never lowers the verdict") {
  const auto& wn = wordnet();
  std::mt19937 rng(99);
  auto ids = wn.synset_ids(N);
  auto random_word = [&] { return wn.synset(ids[rng() % ids.size()]).lemmas[0]; };
  const std::vector<std::string> seeds{"food", "health", "disease", "diet", "illness", "market"};
  for (int trial = 0; trial < 100; ++trial) {
    auto w = rng() % 2 ? seeds[rng() % seeds.size()] : random_word();
    std::vector<std::string> kw{random_word(), seeds[rng() % seeds.size()]};
    double before = similarity(w, kw, N, VectorStore{}, wn).score;
    kw.push_back(rng() % 2 ? random_word() : seeds[rng() % seeds.size()]);
    CHECK(similarity(w, kw, N, VectorStore{}, wn).score >= before);
  }
}

TEST_CASE("zero thresholds reduce to the extended Wu-Palmer maximum") {
  const auto& wn = wordnet();
  SimilarityConfig open{0.95, 0.95, 0.0, 0.0};
  std::vector<std::string> E{"health", "disease", "outcome", "food", "lifestyle"};
  for (const char* w : {"status", "illness", "market", "transition", "qzxv"}) {
    double expected = 0.0;
    for (const auto& c : E) expected = std::max(expected, wup_x(w, c, N, wn));
    auto v = similarity(w, E, N, VectorStore{}, wn, open);
    CHECK(v.score == expected);
    CHECK((v.kind == VerdictKind::None) == (v.score == 0.0));
  }
}
