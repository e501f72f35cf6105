#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slrkit {

enum class Label { Relevant, Irrelevant };
std::string_view to_string(Label label);  // "relevant", "irrelevant"
std::optional<Label> parse_label(std::string_view name);

/// Quotes are required unless the answer was produced directly from the paper.
enum class AnswerMode { Evidence, Direct };
std::string_view to_string(AnswerMode mode);  // "evidence", "direct"

/// Byte range [start, end) of the raw source document given to the model.
struct SourceSlice {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSlice&, const SourceSlice&) = default;
};

/// One LLM answer: the quotes it extracted and the answer built from them.
struct EvidenceRecord {
  std::string paper_id;
  std::string question_id;
  std::string question;
  std::vector<std::string> quotes;
  std::string model_answer;
  std::optional<std::string> expert_answer;
  std::optional<Label> model_label;
  std::optional<Label> expert_label;
  AnswerMode mode = AnswerMode::Evidence;
  std::optional<SourceSlice> source_slice;
  std::optional<double> expert_score;  // expert's 0..1 rating of the model answer

  std::string id() const { return paper_id + ":" + question_id; }
  friend bool operator==(const EvidenceRecord&, const EvidenceRecord&) = default;
};

}  // namespace slrkit
