#include <sstream>

#include "doctest.h"
#include "slrkit/error.hpp"
#include "slrkit/tagging.hpp"
#include "support.hpp"

using namespace slrkit;
using test_support::wordnet;

namespace {

std::vector<std::string> texts(std::string_view s) {
  std::vector<std::string> out;
  for (auto span : tokenize(s)) out.emplace_back(s.substr(span.start, span.size()));
  return out;
}

std::string tags_of(const TaggedDocument& doc) {
  std::string out;
  for (const auto& t : doc.tokens) {
    if (!out.empty()) out += ' ';
    out += to_string(t.tag);
  }
  return out;
}

std::vector<std::string> chunk_texts(const TaggedDocument& doc) {
  std::vector<std::string> out;
  for (const auto& c : doc.chunks) {
    auto start = doc.tokens[c.first].span.start;
    out.push_back(doc.source.substr(start, doc.tokens[c.last - 1].span.end - start));
  }
  return out;
}

TaggedDocument pretagged(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pretagged(in, "doc.tsv");
}

}  // namespace

TEST_CASE("tag names round trip") {
  for (auto t : {Tag::Noun, Tag::Propn, Tag::Verb, Tag::Aux, Tag::Adj, Tag::Adv, Tag::Det,
                 Tag::Punct, Tag::Other}) {
    CHECK(parse_tag(to_string(t)) == t);
  }
  CHECK(to_string(Tag::Propn) == "PROPN");
  CHECK_FALSE(parse_tag("XYZ").has_value());
  CHECK_FALSE(parse_tag("noun").has_value());
}

TEST_CASE("tokenize") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \n\t").empty());
  CHECK(texts("Foodborne illnesses influence status.") ==
        std::vector<std::string>{"Foodborne", "illnesses", "influence", "status", "."});
  CHECK(texts("ultra - processed") == std::vector<std::string>{"ultra", "-", "processed"});
  CHECK(texts("agri-food isn't 3.5 or 1,000") ==
        std::vector<std::string>{"agri-food", "isn't", "3.5", "or", "1,000"});
  CHECK(texts("'holes' (x)") == std::vector<std::string>{"'", "holes", "'", "(", "x", ")"});
  CHECK(texts("end-") == std::vector<std::string>{"end", "-"});

  SUBCASE("offsets are bytes into the source") {
    std::string s = "caf\xC3\xA9 na\xC3\xAFve";
    auto spans = tokenize(s);
    REQUIRE(spans.size() == 2);
    CHECK(spans[0] == CharSpan{0, 5});
    CHECK(spans[1] == CharSpan{6, 12});
  }
}

TEST_CASE("lemmatizer") {
  Lemmatizer lem(wordnet());
  CHECK(lem.lemma("illnesses", PartOfSpeech::Noun) == "illness");
  CHECK(lem.lemma("foods", PartOfSpeech::Noun) == "food");
  CHECK(lem.lemma("fuelled", PartOfSpeech::Verb) == "fuel");
  CHECK(lem.lemma("occurred", PartOfSpeech::Verb) == "occur");
  CHECK(lem.lemma("causing", PartOfSpeech::Verb) == "cause");
  CHECK(lem.lemma("food", PartOfSpeech::Noun) == "food");
  CHECK_FALSE(lem.lemma("qzxv", PartOfSpeech::Noun).has_value());
}

TEST_CASE("tagger on evidence sentences") {
  const auto& wn = wordnet();

  SUBCASE("plural noun ends a chunk") {
    auto doc = tag("Foodborne illnesses significantly influence individuals nutritional status.", wn);
    CHECK(tags_of(doc) == "NOUN NOUN ADV VERB NOUN ADJ NOUN PUNCT");
    CHECK(doc.tokens[1].lemma == "illness");
    CHECK(chunk_texts(doc) ==
          std::vector<std::string>{"Foodborne illnesses", "individuals", "nutritional status"});
  }
  SUBCASE("auxiliary before a participle") {
    auto doc = tag("Changing lifestyles, mainly due to work commitment, have fuelled the increase.",
                   wn);
    REQUIRE(doc.tokens.size() > 10);
    CHECK(doc.tokens[9].text == "have");
    CHECK(doc.tokens[9].tag == Tag::Aux);
    CHECK(doc.tokens[10].tag == Tag::Verb);
    CHECK(doc.tokens[10].lemma == "fuel");
  }
  SUBCASE("have as a main verb") {
    auto doc = tag("Households have electricity.", wn);
    CHECK(doc.tokens[1].tag == Tag::Verb);
  }
  SUBCASE("modal then verb") {
    auto doc = tag("Climate change will contribute to disease.", wn);
    CHECK(tags_of(doc) == "NOUN NOUN AUX VERB OTHER NOUN PUNCT");
  }
  SUBCASE("capitalized word mid-sentence") {
    auto doc = tag("Diets in Kenya changed.", wn);
    CHECK(doc.tokens[2].tag == Tag::Propn);
    CHECK(doc.tokens[0].tag == Tag::Noun);
  }
  SUBCASE("empty text") {
    auto doc = tag("", wn);
    CHECK(doc.tokens.empty());
    CHECK(doc.chunks.empty());
  }
}

TEST_CASE("chunk invariants") {
  auto doc = tag(
      "Significant changes have occurred in food systems in the last decades that have "
      "contributed to widen such holes in the barriers from phase to phase.",
      wordnet());
  std::size_t prev_end = 0;
  for (const auto& c : doc.chunks) {
    CHECK(c.first < c.last);
    CHECK(c.first >= prev_end);
    CHECK(c.head == c.last - 1);
    auto head = doc.tokens[c.head].tag;
    CHECK((head == Tag::Noun || head == Tag::Propn));
    for (auto k = c.first; k < c.last; ++k) {
      auto t = doc.tokens[k].tag;
      CHECK((t == Tag::Det || t == Tag::Adj || t == Tag::Noun || t == Tag::Propn));
      if (t == Tag::Det) CHECK(k == c.first);
    }
    prev_end = c.last;
  }
}

TEST_CASE("pretagged documents") {
  SUBCASE("parse") {
    auto doc = pretagged("Diets\tdiet\tNOUN\nchanged\tchange\tVERB\n.\t.\tPUNCT\n\nThey\tthey\tOTHER\n");
    REQUIRE(doc.tokens.size() == 4);
    CHECK(doc.source == "Diets changed .\nThey");
    CHECK(doc.tokens[3].span == CharSpan{16, 20});
    CHECK(doc.tokens[1].lemma == "change");
    REQUIRE(doc.chunks.size() == 1);
    CHECK(doc.chunks[0] == NounChunk{0, 1, 0});
  }
  SUBCASE("round trip through export") {
    auto doc = tag("Foodborne illnesses influence status. Diets changed!", wordnet());
    auto text = export_pretagged(doc);
    auto back = pretagged(text);
    CHECK(same_content(doc, back));
    CHECK(export_pretagged(back) == text);
  }
  SUBCASE("errors carry the line") {
    auto line_of = [](std::string_view text) {
      try {
        (void)pretagged(text);
      } catch (const LoadError& e) {
        return e.line();
      }
      return std::size_t{0};
    };
    CHECK(line_of("a\ta\tNOUN\nb\tb\tXYZ\n") == 2);
    CHECK(line_of("a\ta\n") == 1);
    CHECK(line_of("a\ta\tNOUN\textra\n") == 1);
    CHECK(line_of("a\ta\tNOUN\n\n\tx\tNOUN\n") == 3);
    CHECK(line_of("a\t\tNOUN\n") == 1);
    CHECK(line_of(",\t\tPUNCT\n") == 0);
  }
}
