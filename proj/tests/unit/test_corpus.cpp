#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "slrkit/corpus.hpp"
#include "support.hpp"

using namespace slrkit;
using test_support::fixture;
using test_support::TempDir;
using test_support::WarningCapture;
using test_support::write_file;

namespace {

KeywordFile parse(const std::string& text, const Lexicon* lexicon = nullptr) {
  std::istringstream in(text);
  return parse_keyword_file(in, "kw.txt", lexicon);
}

std::size_t load_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const LoadError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

std::string evidence_error(const std::string& json) {
  try {
    parse_evidence(json, "ev.json");
  } catch (const LoadError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("canonical_keyword") {
  CHECK(canonical_keyword("  Food  Security ", PartOfSpeech::Noun) == "food_security");
  CHECK(canonical_keyword("Health", PartOfSpeech::Noun) == "health");
  const auto& wn = test_support::wordnet();
  CHECK(canonical_keyword("Diseases", PartOfSpeech::Noun, &wn) == "disease");
  CHECK(canonical_keyword("improves", PartOfSpeech::Verb, &wn) == "improve");
  CHECK(canonical_keyword("qzxv", PartOfSpeech::Noun, &wn) == "qzxv");
}

TEST_CASE("keyword file parsing") {
  SUBCASE("fixture") {
    auto kw = load_keywords(fixture("agrifood.keywords"));
    CHECK(kw.entities == std::vector<std::string>{"health", "disease", "outcome", "food", "lifestyle"});
    CHECK(kw.relations == std::vector<std::string>{"explain", "affect", "improve", "stimulate"});
    CHECK(kw.properties == std::vector<std::string>{"environmental"});
  }
  SUBCASE("config section") {
    auto f = parse("[config]\nwup_threshold = 0.7\np_weight=0.9\n[entities]\nfood\n");
    CHECK(f.config.wup_threshold == 0.7);
    CHECK(f.config.p_weight == 0.9);
    CHECK(f.config.rf_weight == 0.95);
    CHECK(f.keywords.entities == std::vector<std::string>{"food"});
  }
  SUBCASE("errors carry the line") {
    CHECK(load_error_line("# c\n\nfood\n[entities]\n") == 3);
    CHECK(load_error_line("[entities]\nfood\n[verbs]\n") == 3);
    CHECK(load_error_line("[config]\nwup_threshold = high\n") == 2);
    CHECK(load_error_line("[config]\nwup_threshold = 1.5\n") == 2);
    CHECK(load_error_line("[config]\ncolour = 0.5\n") == 2);
    CHECK(load_error_line("[entities\n") == 1);
    CHECK(load_error_line("") == 0);
    CHECK(load_error_line("# only a comment\n") == 0);
    CHECK_THROWS_AS(load_keywords(fixture("no-such-file.keywords")), LoadError);
  }
  SUBCASE("headers only warns and gives an empty set") {
    WarningCapture w;
    auto f = parse("[entities]\n[relations]\n[properties]\n");
    CHECK(f.keywords.empty());
    CHECK(w.messages.size() == 1);
  }
  SUBCASE("duplicates are dropped with a warning") {
    WarningCapture w;
    auto f = parse("[entities]\nfood\nFood\nhealth\n[relations]\nfood\n");
    CHECK(f.keywords.entities == std::vector<std::string>{"food", "health"});
    CHECK(f.keywords.relations == std::vector<std::string>{"food"});
    REQUIRE(w.messages.size() == 1);
    CHECK(w.messages[0].find("kw.txt:3") != std::string::npos);
  }
  SUBCASE("lemmatized with a lexicon") {
    WarningCapture w;
    auto f = parse("[entities]\ndiseases\ndisease\n[relations]\nimproves\n", &test_support::wordnet());
    CHECK(f.keywords.entities == std::vector<std::string>{"disease"});
    CHECK(f.keywords.relations == std::vector<std::string>{"improve"});
  }
  SUBCASE("CRLF and BOM") {
    auto f = parse("\xEF\xBB\xBF[entities]\r\nfood\r\n");
    CHECK(f.keywords.entities == std::vector<std::string>{"food"});
  }
}

TEST_CASE("keyword JSON") {
  KeywordSet k{{"food", "health"}, {"improve"}, {}};
  auto j = keywords_to_json(k);
  CHECK(j.dump() == R"({"entities":["food","health"],"relations":["improve"],"properties":[]})");
  CHECK(keywords_from_json(nlohmann::json::parse(j.dump())) == k);

  auto message = [](const char* text) -> std::string {
    try {
      keywords_from_json(nlohmann::json::parse(text));
    } catch (const std::invalid_argument& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message(R"({"entities":["food",3]})").starts_with("entities[1]:"));
  CHECK(message(R"({"relations":"improve"})").starts_with("relations:"));
  CHECK(message(R"({"properties":["  "]})").starts_with("properties[0]:"));
  CHECK(message(R"({"colours":[]})").starts_with("colours:"));
  CHECK(message(R"([1])").starts_with("$:"));

  KeywordSet messy{{"Food", "food", " health "}, {}, {}};
  auto dropped = canonicalize(messy);
  CHECK(messy.entities == std::vector<std::string>{"food", "health"});
  CHECK(dropped == std::vector<std::string>{"food"});
}

TEST_CASE("evidence loading") {
  auto records = load_evidence(fixture("audit/evidence.json"));
  REQUIRE(records.size() == 4);
  CHECK(records[0].id() == "smith2021:q1");
  CHECK(records[0].quotes.size() == 2);
  CHECK(records[0].model_label == Label::Relevant);
  CHECK(records[1].expert_label == Label::Irrelevant);
  CHECK(records[2].source_slice == SourceSlice{0, 200});
  CHECK(records[3].mode == AnswerMode::Direct);
  CHECK(records[3].quotes.empty());
  CHECK_FALSE(records[3].expert_answer.has_value());

  SUBCASE("round trip") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) arr.push_back(evidence_to_json(r));
    CHECK(parse_evidence(arr.dump(), "rt.json") == records);
  }

  const std::string base =
      R"("paper_id":"p","question_id":"q","question":"Q?","model_answer":"A")";
  CHECK(evidence_error("[{" + base + R"(,"quotes":["x"]}])") == "");
  CHECK(evidence_error("{}").find("array") != std::string::npos);
  CHECK(evidence_error("[{" + base + "}]").find("record 0: field 'quotes'") != std::string::npos);
  CHECK(evidence_error(R"([{"paper_id":"p","question_id":"q","question":"Q?","quotes":["x"]}])")
            .find("field 'model_answer' is missing") != std::string::npos);
  CHECK(evidence_error("[{" + base + R"(,"quotes":["x",1]}])").find("quotes[1]") != std::string::npos);
  CHECK(evidence_error("[{" + base + R"(,"quotes":["x"],"model_label":"yes"}])")
            .find("model_label") != std::string::npos);
  CHECK(evidence_error("[{" + base + R"(,"quotes":["x"],"source_slice":[5,2]}])")
            .find("source_slice") != std::string::npos);
  CHECK(evidence_error("[{" + base + R"(,"quotes":["x"],"expert_score":1.5}])")
            .find("expert_score") != std::string::npos);
  CHECK(evidence_error("[{" + base + R"(,"quotes":["x"]},{)" + base + R"(,"quotes":["y"]}])")
            .find("record 1: duplicate id 'p:q'") != std::string::npos);
  CHECK(evidence_error("[{" + base + R"(,"mode":"direct"}])") == "");
  CHECK(evidence_error("[").find("invalid JSON") != std::string::npos);
}

TEST_CASE("documents and sentence embeddings") {
  auto docs = load_documents(fixture("corpus"));
  REQUIRE(docs.size() == 4);
  CHECK(docs.begin()->first == "ex1");
  CHECK(docs.at("ex2").starts_with("Foodborne"));

  TempDir dir;
  CHECK(load_documents(dir.path()).empty());
  write_file(dir / "notes.md", "ignored");
  write_file(dir / "b.txt", "second");
  write_file(dir / "a.txt", "first");
  auto two = load_documents(dir.path());
  REQUIRE(two.size() == 2);
  CHECK(two.begin()->second == "first");
  CHECK_THROWS_AS(load_documents(dir / "a.txt"), LoadError);

  auto emb = load_sentence_embeddings(fixture("audit/sentences.vec"));
  CHECK(emb.size() == 6);
  CHECK(emb.at("lee2019:q1:expert").components == std::vector<double>{0.25, 0.2, 0.85});

  auto line_of = [&](std::string_view content) -> std::size_t {
    write_file(dir / "s.vec", content);
    try {
      load_sentence_embeddings(dir / "s.vec");
    } catch (const LoadError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a 1 2\na 3 4\n") == 2);
  CHECK(line_of("a 1 2\nb 3\n") == 2);
  CHECK(line_of("# c\na 1 x\n") == 2);
  CHECK(line_of("a\n") == 1);
}

TEST_CASE("reports") {
  Report r;
  r.kind = "calibrate";
  r.meta["created_at"] = "2026-01-01T00:00:00Z";
  r.body["documents"] = {{{"id", "a"}, {"rate", 0.5}}};
  r.body["mean"] = 0.5;
  TempDir dir;
  save_report(r, dir / "r.json");
  auto back = load_report(dir / "r.json");
  CHECK(back.kind == "calibrate");
  CHECK(comparable_body(back) == comparable_body(r));
  CHECK(serialize_report(back) == serialize_report(r));

  Report later = r;
  later.meta["created_at"] = "2026-02-02T00:00:00Z";
  CHECK(comparable_body(later) == comparable_body(r));
  CHECK(serialize_report(later) != serialize_report(r));

  write_file(dir / "bad.json", R"({"meta":{}})");
  CHECK_THROWS_AS(load_report(dir / "bad.json"), LoadError);
}

TEST_CASE("project config") {
  TempDir dir;
  std::filesystem::create_directory(dir / "docs");
  write_file(dir / "kw.txt", "[entities]\nfood\n");
  write_file(dir / "project.json",
             R"({"documents":"docs","keywords":"kw.txt","similarity":{"wup_threshold":0.75},)"
             R"("audit_threshold":85})");
  auto cfg = load_project_config(dir / "project.json");
  CHECK(cfg.documents == dir / "docs");
  CHECK(cfg.keywords == dir / "kw.txt");
  CHECK(cfg.history == dir / "history.jsonl");
  REQUIRE(cfg.similarity.has_value());
  CHECK(cfg.similarity->wup_threshold == 0.75);
  CHECK(cfg.similarity->vec_threshold == 0.95);
  CHECK(cfg.audit_threshold == 85);
  CHECK_FALSE(cfg.vectors.has_value());

  auto message = [&](std::string_view content) -> std::string {
    write_file(dir / "p.json", content);
    try {
      load_project_config(dir / "p.json");
    } catch (const LoadError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message(R"({"keywords":"kw.txt"})").find("'documents' is missing") != std::string::npos);
  CHECK(message(R"({"documents":"nope","keywords":"kw.txt"})").find("'documents' points to a missing") !=
        std::string::npos);
  CHECK(message(R"({"documents":"docs","keywords":"kw.txt","vectors":"v.txt"})").find("'vectors'") !=
        std::string::npos);
  CHECK(message(R"({"documents":"docs","keywords":"kw.txt","similarity":{"wup_threshold":2}})")
            .find("'similarity'") != std::string::npos);
  CHECK(message(R"({"documents":"docs","keywords":"kw.txt","similarity":{"speed":2}})")
            .find("'similarity.speed'") != std::string::npos);
  CHECK(message(R"({"documents":"docs","keywords":"kw.txt","audit_threshold":"90"})")
            .find("'audit_threshold'") != std::string::npos);
  CHECK(message("[]").find("object") != std::string::npos);
}
