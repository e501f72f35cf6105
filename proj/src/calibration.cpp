#include "slrkit/calibration.hpp"

#include <cmath>

#include "parallel.hpp"
#include "slrkit/tagging.hpp"

namespace slrkit {

bool RateBand::contains(double rate) const {
  return std::abs(rate - center) <= half_width + 1e-12;
}

DocumentRate document_rate(std::string id, const HighlightedDocument& doc) {
  DocumentRate out;
  out.id = std::move(id);
  const auto& toks = doc.doc.tokens;
  auto is_word = [](const TaggedToken& t) { return t.tag != Tag::Punct; };
  for (const auto& t : toks) out.words += is_word(t) ? 1 : 0;
  for (const auto& s : doc.spans) {
    for (std::size_t k = s.first; k < s.last; ++k) out.highlighted += is_word(toks[k]) ? 1 : 0;
  }
  if (out.words > 0) out.rate = static_cast<double>(out.highlighted) / static_cast<double>(out.words);
  return out;
}

CalibrationReport calibrate(const std::map<std::string, std::string>& documents,
                            const KeywordSet& keywords, const VectorStore& store,
                            const Lexicon& lexicon, const SimilarityConfig& config, unsigned jobs,
                            RateBand band) {
  std::vector<const std::pair<const std::string, std::string>*> items;
  for (const auto& entry : documents) items.push_back(&entry);

  std::vector<DocumentRate> rates(items.size());
  detail::parallel_for(items.size(), jobs, [&](std::size_t i) {
    auto h = highlight(tag(items[i]->second, lexicon), keywords, store, lexicon, config);
    rates[i] = document_rate(items[i]->first, h);
  });
  return summarize_rates(std::move(rates), band);
}

CalibrationReport summarize_rates(std::vector<DocumentRate> documents, RateBand band) {
  CalibrationReport report;
  report.band = band;
  report.documents = std::move(documents);
  std::vector<double> rates;
  for (const auto& d : report.documents) {
    if (d.rate) rates.push_back(*d.rate);
  }
  if (!rates.empty()) {
    report.summary = mean_std(rates);
    report.in_band = band.contains(report.summary->mean);
  }
  return report;
}

nlohmann::ordered_json calibration_to_json(const CalibrationReport& report) {
  nlohmann::ordered_json j;
  j["documents"] = nlohmann::ordered_json::array();
  for (const auto& d : report.documents) {
    nlohmann::ordered_json e;
    e["id"] = d.id;
    e["words"] = d.words;
    e["highlighted"] = d.highlighted;
    e["rate"] = d.rate ? nlohmann::ordered_json(*d.rate) : nlohmann::ordered_json(nullptr);
    j["documents"].push_back(std::move(e));
  }
  if (report.summary) {
    j["mean"] = report.summary->mean;
    j["std"] = report.summary->std;
  } else {
    j["mean"] = nullptr;
    j["std"] = nullptr;
  }
  j["band"] = {{"center", report.band.center}, {"half_width", report.band.half_width}};
  j["in_band"] = report.in_band;
  return j;
}

}  // namespace slrkit
