#pragma once

// Loaders for keyword sets, evidence records, documents and sentence
// embeddings, plus run reports and the project file used by the service.

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "slrkit/embeddings.hpp"
#include "slrkit/evidence.hpp"
#include "slrkit/highlighter.hpp"
#include "slrkit/lexicon.hpp"
#include "slrkit/similarity.hpp"

namespace slrkit {

/// Lowercase, inner whitespace to '_', then the lemma when the lexicon knows
/// one for `pos`. Adjective keywords also try the adverb category.
std::string canonical_keyword(std::string_view raw, PartOfSpeech pos,
                              const Lexicon* lexicon = nullptr);

struct KeywordFile {
  KeywordSet keywords;
  SimilarityConfig config;  // defaults overridden by a [config] section
};

/// Sections [entities], [relations], [properties] and optional [config]
/// with `key = value` lines; `#` starts a comment line. Throws LoadError with
/// the line for a keyword outside a section, an unknown section or a bad
/// config line, and for a file with no sections at all. Duplicates are
/// dropped with a warning; a file with only headers gives an empty set and a
/// warning.
KeywordFile parse_keyword_file(std::istream& in, const std::filesystem::path& name,
                               const Lexicon* lexicon = nullptr);
KeywordFile load_keyword_file(const std::filesystem::path& path, const Lexicon* lexicon = nullptr);
KeywordSet load_keywords(const std::filesystem::path& path, const Lexicon* lexicon = nullptr);

/// Canonicalizes and de-duplicates in place; returns the dropped duplicates.
std::vector<std::string> canonicalize(KeywordSet& keywords, const Lexicon* lexicon = nullptr);

nlohmann::ordered_json keywords_to_json(const KeywordSet& keywords);
/// Throws std::invalid_argument whose message starts with the offending
/// field path, e.g. "entities[2]: expected a string".
KeywordSet keywords_from_json(const nlohmann::json& j);

/// JSON array of record objects. Throws LoadError naming the record index and
/// field on a schema violation and on a repeated paper_id + question_id.
std::vector<EvidenceRecord> parse_evidence(std::string_view json, const std::filesystem::path& name);
std::vector<EvidenceRecord> load_evidence(const std::filesystem::path& path);
nlohmann::ordered_json evidence_to_json(const EvidenceRecord& record);

/// Every *.txt file of a directory, keyed by file stem, in sorted order.
std::map<std::string, std::string> load_documents(const std::filesystem::path& dir);

/// Lines "record_id v1 ... vd". Throws LoadError on a repeated id, a bad
/// number or an inconsistent dimension.
std::map<std::string, EmbeddingVector> load_sentence_embeddings(const std::filesystem::path& path);

/// `meta` holds run details such as timestamps; `body` is the comparable,
/// deterministic part.
struct Report {
  std::string kind;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  nlohmann::ordered_json body = nlohmann::ordered_json::object();
};

/// Current UTC time as "YYYY-MM-DDThh:mm:ssZ", for report metadata.
std::string utc_timestamp();

std::string comparable_body(const Report& report);  // body serialized
std::string serialize_report(const Report& report);
Report parse_report(std::string_view text);
void save_report(const Report& report, const std::filesystem::path& path);
Report load_report(const std::filesystem::path& path);

/// Project file (JSON) for the calibration service. Relative paths are
/// resolved against the file's directory.
struct ProjectConfig {
  std::filesystem::path documents;
  std::filesystem::path keywords;
  std::optional<std::filesystem::path> vectors;
  std::optional<std::filesystem::path> lexicon;
  std::filesystem::path history;  // default: history.jsonl next to the project file
  std::optional<SimilarityConfig> similarity;  // unset: the keyword file's [config]
  int audit_threshold = 90;
};

/// Throws LoadError naming the field when a value has the wrong type or a
/// referenced path does not exist.
ProjectConfig load_project_config(const std::filesystem::path& path);

}  // namespace slrkit
