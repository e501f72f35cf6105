#include "slrkit/evidence.hpp"

namespace slrkit {

std::string_view to_string(Label label) {
  return label == Label::Relevant ? "relevant" : "irrelevant";
}

std::optional<Label> parse_label(std::string_view name) {
  if (name == "relevant") return Label::Relevant;
  if (name == "irrelevant") return Label::Irrelevant;
  return std::nullopt;
}

std::string_view to_string(AnswerMode mode) {
  return mode == AnswerMode::Direct ? "direct" : "evidence";
}

}  // namespace slrkit
