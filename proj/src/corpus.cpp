#include "slrkit/corpus.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "slrkit/error.hpp"
#include "slrkit/tagging.hpp"
#include "text_util.hpp"
#include "unicode.hpp"

namespace slrkit {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw LoadError(path, 0, "read failed");
  return ss.str();
}

PartOfSpeech section_pos(int section) {
  switch (section) {
    case 0: return PartOfSpeech::Noun;
    case 1: return PartOfSpeech::Verb;
    default: return PartOfSpeech::Adjective;
  }
}

std::vector<std::string>& section_list(KeywordSet& set, int section) {
  switch (section) {
    case 0: return set.entities;
    case 1: return set.relations;
    default: return set.properties;
  }
}

const char* section_name(int section) {
  switch (section) {
    case 0: return "entities";
    case 1: return "relations";
    default: return "properties";
  }
}

}  // namespace

std::string canonical_keyword(std::string_view raw, PartOfSpeech pos, const Lexicon* lexicon) {
  std::string lowered = detail::lowercase(detail::trim(raw));
  std::string out;
  bool gap = false;
  for (char c : lowered) {
    if (detail::is_space(c) || c == '_') {
      gap = !out.empty();
      continue;
    }
    if (gap) out.push_back('_');
    gap = false;
    out.push_back(c);
  }
  if (!lexicon || out.empty()) return out;
  Lemmatizer lem(*lexicon);
  if (auto l = lem.lemma(out, pos)) return *l;
  if (pos == PartOfSpeech::Adjective) {
    if (auto l = lem.lemma(out, PartOfSpeech::Adverb)) return *l;
  }
  return out;
}

std::vector<std::string> canonicalize(KeywordSet& keywords, const Lexicon* lexicon) {
  std::vector<std::string> dropped;
  for (int s = 0; s < 3; ++s) {
    auto& list = section_list(keywords, s);
    std::vector<std::string> kept;
    std::set<std::string> seen;
    for (const auto& raw : list) {
      auto k = canonical_keyword(raw, section_pos(s), lexicon);
      if (k.empty()) continue;
      if (!seen.insert(k).second) {
        dropped.push_back(k);
        continue;
      }
      kept.push_back(std::move(k));
    }
    list = std::move(kept);
  }
  return dropped;
}

KeywordFile parse_keyword_file(std::istream& in, const fs::path& name, const Lexicon* lexicon) {
  KeywordFile out;
  int section = -1;  // 0..2 keyword sections, 3 config
  bool any_header = false;
  std::set<std::string> seen[3];
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (lineno == 1 && t.starts_with("\xEF\xBB\xBF")) t = detail::trim(t.substr(3));
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw LoadError(name, lineno, "unterminated section header");
      auto header = detail::to_lower_ascii(detail::trim(t.substr(1, t.size() - 2)));
      if (header == "entities") section = 0;
      else if (header == "relations") section = 1;
      else if (header == "properties") section = 2;
      else if (header == "config") section = 3;
      else throw LoadError(name, lineno, "unknown section [" + header + "]");
      any_header = true;
      continue;
    }
    if (section < 0) {
      throw LoadError(name, lineno, "keyword '" + std::string(t) + "' before any section header");
    }
    if (section == 3) {
      auto eq = t.find('=');
      if (eq == std::string_view::npos) throw LoadError(name, lineno, "expected key = value");
      auto key = detail::trim(t.substr(0, eq));
      auto value = detail::parse_double(detail::trim(t.substr(eq + 1)));
      if (!value) throw LoadError(name, lineno, "value of '" + std::string(key) + "' is not a number");
      if (key == "p_weight") out.config.p_weight = *value;
      else if (key == "rf_weight") out.config.rf_weight = *value;
      else if (key == "wup_threshold") out.config.wup_threshold = *value;
      else if (key == "vec_threshold") out.config.vec_threshold = *value;
      else throw LoadError(name, lineno, "unknown config key '" + std::string(key) + "'");
      try {
        out.config.validate();
      } catch (const std::invalid_argument& e) {
        throw LoadError(name, lineno, e.what());
      }
      continue;
    }
    auto k = canonical_keyword(t, section_pos(section), lexicon);
    if (!seen[section].insert(k).second) {
      warn(name.string() + ":" + std::to_string(lineno) + ": duplicate keyword '" + k + "' in [" +
           section_name(section) + "] ignored");
      continue;
    }
    section_list(out.keywords, section).push_back(std::move(k));
  }
  if (!any_header) throw LoadError(name, 0, "no keyword sections");
  if (out.keywords.empty()) warn(name.string() + ": keyword file has no keywords");
  return out;
}

KeywordFile load_keyword_file(const fs::path& path, const Lexicon* lexicon) {
  std::istringstream in(read_file(path));
  return parse_keyword_file(in, path, lexicon);
}

KeywordSet load_keywords(const fs::path& path, const Lexicon* lexicon) {
  return load_keyword_file(path, lexicon).keywords;
}

ordered_json keywords_to_json(const KeywordSet& keywords) {
  ordered_json j;
  j["entities"] = keywords.entities;
  j["relations"] = keywords.relations;
  j["properties"] = keywords.properties;
  return j;
}

KeywordSet keywords_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("$: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "entities" && key != "relations" && key != "properties") {
      throw std::invalid_argument(key + ": unknown field");
    }
  }
  KeywordSet out;
  for (int s = 0; s < 3; ++s) {
    const char* field = section_name(s);
    auto it = j.find(field);
    if (it == j.end()) continue;
    if (!it->is_array()) throw std::invalid_argument(std::string(field) + ": expected an array");
    auto& list = section_list(out, s);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& v = (*it)[i];
      auto path = std::string(field) + "[" + std::to_string(i) + "]";
      if (!v.is_string()) throw std::invalid_argument(path + ": expected a string");
      if (detail::trim(v.get_ref<const std::string&>()).empty()) {
        throw std::invalid_argument(path + ": empty keyword");
      }
      list.push_back(v.get<std::string>());
    }
  }
  return out;
}

namespace {

class RecordReader {
 public:
  RecordReader(const json& obj, std::size_t index, const fs::path& file)
      : obj_(obj), index_(index), file_(file) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw LoadError(file_, 0, "record " + std::to_string(index_) + ": field '" + field + "' " + what);
  }

  const json* find(const std::string& field) const {
    auto it = obj_.find(field);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string required_string(const std::string& field) const {
    const json* v = find(field);
    if (!v) fail(field, "is missing");
    if (!v->is_string()) fail(field, "must be a string");
    return v->get<std::string>();
  }

  std::optional<std::string> optional_string(const std::string& field) const {
    const json* v = find(field);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(field, "must be a string");
    return v->get<std::string>();
  }

  std::optional<Label> optional_label(const std::string& field) const {
    auto s = optional_string(field);
    if (!s) return std::nullopt;
    auto label = parse_label(*s);
    if (!label) fail(field, "must be \"relevant\" or \"irrelevant\"");
    return label;
  }

 private:
  const json& obj_;
  std::size_t index_;
  const fs::path& file_;
};

}  // namespace

std::vector<EvidenceRecord> parse_evidence(std::string_view text, const fs::path& name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError(name, 0, std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_array()) throw LoadError(name, 0, "expected a JSON array of records");
  std::vector<EvidenceRecord> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& obj = root[i];
    if (!obj.is_object()) throw LoadError(name, 0, "record " + std::to_string(i) + ": expected an object");
    RecordReader r(obj, i, name);
    EvidenceRecord rec;
    rec.paper_id = r.required_string("paper_id");
    rec.question_id = r.required_string("question_id");
    rec.question = r.required_string("question");
    rec.model_answer = r.required_string("model_answer");
    rec.expert_answer = r.optional_string("expert_answer");
    rec.model_label = r.optional_label("model_label");
    rec.expert_label = r.optional_label("expert_label");
    if (auto mode = r.optional_string("mode")) {
      if (*mode == "direct") rec.mode = AnswerMode::Direct;
      else if (*mode == "evidence") rec.mode = AnswerMode::Evidence;
      else r.fail("mode", "must be \"evidence\" or \"direct\"");
    }
    if (const json* q = r.find("quotes")) {
      if (!q->is_array()) r.fail("quotes", "must be an array of strings");
      for (std::size_t k = 0; k < q->size(); ++k) {
        if (!(*q)[k].is_string()) r.fail("quotes[" + std::to_string(k) + "]", "must be a string");
        rec.quotes.push_back((*q)[k].get<std::string>());
      }
    }
    if (rec.mode == AnswerMode::Evidence && rec.quotes.empty()) {
      r.fail("quotes", "must hold at least one quote unless mode is \"direct\"");
    }
    if (const json* s = r.find("source_slice")) {
      if (!s->is_array() || s->size() != 2 || !(*s)[0].is_number_unsigned() ||
          !(*s)[1].is_number_unsigned()) {
        r.fail("source_slice", "must be [start, end] with non-negative integers");
      }
      SourceSlice slice{(*s)[0].get<std::size_t>(), (*s)[1].get<std::size_t>()};
      if (slice.start > slice.end) r.fail("source_slice", "has start > end");
      rec.source_slice = slice;
    }
    if (const json* e = r.find("expert_score")) {
      if (!e->is_number()) r.fail("expert_score", "must be a number");
      double v = e->get<double>();
      if (!(v >= 0.0 && v <= 1.0)) r.fail("expert_score", "must be in [0, 1]");
      rec.expert_score = v;
    }
    if (!ids.insert(rec.id()).second) {
      throw LoadError(name, 0, "record " + std::to_string(i) + ": duplicate id '" + rec.id() + "'");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<EvidenceRecord> load_evidence(const fs::path& path) {
  return parse_evidence(read_file(path), path);
}

ordered_json evidence_to_json(const EvidenceRecord& rec) {
  ordered_json j;
  j["paper_id"] = rec.paper_id;
  j["question_id"] = rec.question_id;
  j["question"] = rec.question;
  j["quotes"] = rec.quotes;
  j["model_answer"] = rec.model_answer;
  if (rec.expert_answer) j["expert_answer"] = *rec.expert_answer;
  if (rec.model_label) j["model_label"] = std::string(to_string(*rec.model_label));
  if (rec.expert_label) j["expert_label"] = std::string(to_string(*rec.expert_label));
  j["mode"] = std::string(to_string(rec.mode));
  if (rec.source_slice) j["source_slice"] = {rec.source_slice->start, rec.source_slice->end};
  if (rec.expert_score) j["expert_score"] = *rec.expert_score;
  return j;
}

std::map<std::string, std::string> load_documents(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw LoadError(dir, 0, "not a directory");
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    out.emplace(entry.path().stem().string(), read_file(entry.path()));
  }
  return out;
}

std::map<std::string, EmbeddingVector> load_sentence_embeddings(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::map<std::string, EmbeddingVector> out;
  std::size_t dimension = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = detail::split_ws(t);
    if (fields.size() < 2) throw LoadError(path, lineno, "expected an id and at least one component");
    EmbeddingVector v;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto x = detail::parse_double(fields[i]);
      if (!x) throw LoadError(path, lineno, "bad number '" + std::string(fields[i]) + "'");
      v.components.push_back(*x);
    }
    if (dimension == 0) dimension = v.dimension();
    if (v.dimension() != dimension) {
      throw LoadError(path, lineno, "dimension " + std::to_string(v.dimension()) + ", expected " +
                                        std::to_string(dimension));
    }
    std::string id(fields[0]);
    if (!out.emplace(id, std::move(v)).second) throw LoadError(path, lineno, "duplicate id '" + id + "'");
  }
  return out;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string comparable_body(const Report& report) { return report.body.dump(2); }

std::string serialize_report(const Report& report) {
  ordered_json j;
  j["kind"] = report.kind;
  j["meta"] = report.meta;
  j["body"] = report.body;
  return j.dump(2) + "\n";
}

Report parse_report(std::string_view text) {
  ordered_json j = ordered_json::parse(text);
  if (!j.is_object() || !j.contains("kind") || !j.contains("body")) {
    throw std::invalid_argument("report needs 'kind' and 'body'");
  }
  Report r;
  r.kind = j.at("kind").get<std::string>();
  if (j.contains("meta")) r.meta = j.at("meta");
  r.body = j.at("body");
  return r;
}

void save_report(const Report& report, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError(path, 0, "cannot write file");
  out << serialize_report(report);
  if (!out) throw LoadError(path, 0, "write failed");
}

Report load_report(const fs::path& path) {
  try {
    return parse_report(read_file(path));
  } catch (const json::exception& e) {
    throw LoadError(path, 0, e.what());
  } catch (const std::invalid_argument& e) {
    throw LoadError(path, 0, e.what());
  }
}

ProjectConfig load_project_config(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw LoadError(path, 0, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw LoadError(path, 0, "expected a JSON object");
  const fs::path base = path.parent_path();
  auto fail = [&](const std::string& field, const std::string& what) {
    throw LoadError(path, 0, "field '" + field + "' " + what);
  };
  auto get_path = [&](const std::string& field, bool required) -> std::optional<fs::path> {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
      if (required) fail(field, "is missing");
      return std::nullopt;
    }
    if (!it->is_string()) fail(field, "must be a string");
    fs::path p = it->get<std::string>();
    if (p.is_relative()) p = base / p;
    return p;
  };
  auto must_exist = [&](const std::string& field, const fs::path& p) {
    std::error_code ec;
    if (!fs::exists(p, ec)) fail(field, "points to a missing path: " + p.string());
  };

  ProjectConfig cfg;
  cfg.documents = *get_path("documents", true);
  must_exist("documents", cfg.documents);
  cfg.keywords = *get_path("keywords", true);
  must_exist("keywords", cfg.keywords);
  cfg.vectors = get_path("vectors", false);
  if (cfg.vectors) must_exist("vectors", *cfg.vectors);
  cfg.lexicon = get_path("lexicon", false);
  if (cfg.lexicon) must_exist("lexicon", *cfg.lexicon);
  cfg.history = get_path("history", false).value_or(base / "history.jsonl");

  if (auto it = j.find("similarity"); it != j.end()) {
    if (!it->is_object()) fail("similarity", "must be an object");
    SimilarityConfig sim;
    for (const auto& [key, value] : it->items()) {
      double* slot = key == "p_weight"        ? &sim.p_weight
                     : key == "rf_weight"     ? &sim.rf_weight
                     : key == "wup_threshold" ? &sim.wup_threshold
                     : key == "vec_threshold" ? &sim.vec_threshold
                                              : nullptr;
      if (!slot) fail("similarity." + key, "is not a known setting");
      if (!value.is_number()) fail("similarity." + key, "must be a number");
      *slot = value.get<double>();
    }
    try {
      sim.validate();
    } catch (const std::invalid_argument& e) {
      fail("similarity", e.what());
    }
    cfg.similarity = sim;
  }
  if (auto it = j.find("audit_threshold"); it != j.end()) {
    if (!it->is_number_integer()) fail("audit_threshold", "must be an integer");
    cfg.audit_threshold = it->get<int>();
    if (cfg.audit_threshold < 0 || cfg.audit_threshold > 100) fail("audit_threshold", "must be in [0, 100]");
  }
  return cfg;
}

}  // namespace slrkit
