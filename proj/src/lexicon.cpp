#include "slrkit/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "slrkit/error.hpp"
#include "text_util.hpp"

namespace slrkit {

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::Noun: return "noun";
    case PartOfSpeech::Verb: return "verb";
    case PartOfSpeech::Adjective: return "adjective";
    case PartOfSpeech::Adverb: return "adverb";
  }
  return "unknown";
}

char pos_letter(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::Noun: return 'n';
    case PartOfSpeech::Verb: return 'v';
    case PartOfSpeech::Adjective: return 'a';
    case PartOfSpeech::Adverb: return 'r';
  }
  return '?';
}

std::optional<PartOfSpeech> parse_pos_letter(char letter) {
  switch (letter) {
    case 'n': return PartOfSpeech::Noun;
    case 'v': return PartOfSpeech::Verb;
    case 'a':
    case 's': return PartOfSpeech::Adjective;
    case 'r': return PartOfSpeech::Adverb;
    default: return std::nullopt;
  }
}

std::optional<PartOfSpeech> parse_pos_name(std::string_view name) {
  if (name == "noun") return PartOfSpeech::Noun;
  if (name == "verb") return PartOfSpeech::Verb;
  if (name == "adjective" || name == "adj") return PartOfSpeech::Adjective;
  if (name == "adverb" || name == "adv") return PartOfSpeech::Adverb;
  return std::nullopt;
}

std::string to_string(const SynsetId& id) {
  std::string digits = std::to_string(id.offset);
  if (digits.size() < 8) digits.insert(0, 8 - digits.size(), '0');
  return digits + "-" + pos_letter(id.pos);
}

namespace {

constexpr std::array<std::string_view, 4> kFileSuffix = {"noun", "verb", "adj", "adv"};

std::size_t slot(PartOfSpeech pos) { return static_cast<std::size_t>(pos); }

std::string canonical_lemma(std::string_view word) {
  // Adjective syntactic markers: "(a)", "(p)", "(ip)".
  if (!word.empty() && word.back() == ')') {
    if (auto open = word.rfind('('); open != std::string_view::npos) word = word.substr(0, open);
  }
  return detail::to_lower_ascii(word);
}

struct PendingPointer {
  std::string symbol;
  LemmaRef from;
  SynsetId target;
  std::uint16_t target_lemma = 0;
  bool lexical = false;
  std::size_t line = 0;
  PartOfSpeech file_pos = PartOfSpeech::Noun;
};

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, 0, "cannot open lexicon file");
  return in;
}

}  // namespace

Lexicon Lexicon::load(const std::filesystem::path& dir) {
  // Check every file up front so the error names the first missing one.
  for (auto kind : {"index", "data"}) {
    for (auto suffix : kFileSuffix) {
      auto path = dir / (std::string(kind) + "." + std::string(suffix));
      if (!std::filesystem::is_regular_file(path)) {
        throw LoadError(path, 0, "missing lexicon file");
      }
    }
  }

  Lexicon lex;
  std::vector<PendingPointer> pointers;

  for (PartOfSpeech pos : kAllPartsOfSpeech) {
    const auto path = dir / ("data." + std::string(kFileSuffix[slot(pos)]));
    auto in = open_or_throw(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line.starts_with("  ")) continue;  // license header
      auto malformed = [&](const std::string& why) {
        return LoadError(path, line_no, "malformed data line: " + why);
      };

      std::string_view view(line);
      std::string gloss;
      if (auto bar = view.find('|'); bar != std::string_view::npos) {
        gloss = std::string(detail::trim(view.substr(bar + 1)));
        view = view.substr(0, bar);
      }
      auto fields = detail::split_ws(view);
      if (fields.size() < 6) throw malformed("too few fields");

      auto offset = detail::parse_int<std::uint32_t>(fields[0]);
      if (!offset) throw malformed("bad synset offset");
      if (fields[2].size() != 1) throw malformed("bad synset type");
      auto ss_type = parse_pos_letter(fields[2][0]);
      if (!ss_type || *ss_type != pos) throw malformed("synset type does not match file");
      auto word_count = detail::parse_int<std::size_t>(fields[3], 16);
      if (!word_count || *word_count == 0) throw malformed("bad word count");

      Node node;
      node.synset.id = SynsetId{pos, *offset};
      node.synset.gloss = std::move(gloss);
      std::size_t i = 4;
      for (std::size_t w = 0; w < *word_count; ++w, i += 2) {
        if (i + 1 >= fields.size()) throw malformed("word list truncated");
        auto lemma = canonical_lemma(fields[i]);
        if (lemma.empty()) throw malformed("empty lemma");
        node.synset.lemmas.push_back(std::move(lemma));
      }
      if (i >= fields.size()) throw malformed("missing pointer count");
      auto pointer_count = detail::parse_int<std::size_t>(fields[i]);
      if (!pointer_count) throw malformed("bad pointer count");
      ++i;
      for (std::size_t p = 0; p < *pointer_count; ++p, i += 4) {
        if (i + 3 >= fields.size()) throw malformed("pointer list truncated");
        std::string_view symbol = fields[i];
        if (symbol != "@" && symbol != "@i" && symbol != "\\" && symbol != "+") continue;
        auto target_offset = detail::parse_int<std::uint32_t>(fields[i + 1]);
        auto target_pos =
            fields[i + 2].size() == 1 ? parse_pos_letter(fields[i + 2][0]) : std::nullopt;
        auto source_target = fields[i + 3];
        if (!target_offset || !target_pos || source_target.size() != 4) {
          throw malformed("bad pointer");
        }
        auto source = detail::parse_int<std::uint16_t>(source_target.substr(0, 2), 16);
        auto target = detail::parse_int<std::uint16_t>(source_target.substr(2, 2), 16);
        if (!source || !target) throw malformed("bad pointer source/target");

        SynsetId target_id{*target_pos, *target_offset};
        if (symbol == "@" || symbol == "@i") {
          node.synset.hypernyms.push_back(target_id);
          continue;
        }
        if (*source > node.synset.lemmas.size()) throw malformed("pointer source out of range");
        PendingPointer pending;
        pending.symbol = std::string(symbol);
        pending.target = target_id;
        pending.line = line_no;
        pending.file_pos = pos;
        pending.lexical = *source != 0;
        pending.target_lemma = static_cast<std::uint16_t>(*target == 0 ? 0 : *target - 1);
        if (pending.lexical) {
          pending.from = LemmaRef{node.synset.id, static_cast<std::uint16_t>(*source - 1)};
          pointers.push_back(pending);
        } else {
          // Semantic pointer: applies to every lemma of the source synset.
          for (std::size_t l = 0; l < node.synset.lemmas.size(); ++l) {
            pending.from = LemmaRef{node.synset.id, static_cast<std::uint16_t>(l)};
            pointers.push_back(pending);
          }
        }
      }
      if (lex.by_id_.contains(node.synset.id)) throw malformed("duplicate synset offset");
      lex.by_id_.emplace(node.synset.id, lex.synsets_.size());
      lex.synsets_.push_back(std::move(node));
    }
  }

  for (const auto& p : pointers) {
    auto it = lex.by_id_.find(p.target);
    auto path = dir / ("data." + std::string(kFileSuffix[slot(p.file_pos)]));
    if (it == lex.by_id_.end()) {
      throw LoadError(path, p.line, "pointer to unknown synset " + to_string(p.target));
    }
    if (p.target_lemma >= lex.synsets_[it->second].synset.lemmas.size()) {
      throw LoadError(path, p.line, "pointer target lemma out of range");
    }
    LemmaRef to{p.target, p.target_lemma};
    lex.add_relation(p.symbol == "\\" ? &Node::pertainyms : &Node::related_forms, p.from, to);
  }

  for (PartOfSpeech pos : kAllPartsOfSpeech) {
    const auto path = dir / ("index." + std::string(kFileSuffix[slot(pos)]));
    auto in = open_or_throw(path);
    std::string line;
    std::size_t line_no = 0;
    auto& index = lex.index_[slot(pos)];
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line.starts_with("  ")) continue;
      auto malformed = [&](const std::string& why) {
        return LoadError(path, line_no, "malformed index line: " + why);
      };
      auto fields = detail::split_ws(line);
      if (fields.size() < 6) throw malformed("too few fields");
      auto synset_count = detail::parse_int<std::size_t>(fields[2]);
      auto pointer_count = detail::parse_int<std::size_t>(fields[3]);
      if (!synset_count || !pointer_count) throw malformed("bad counts");
      if (fields.size() != 4 + *pointer_count + 2 + *synset_count) {
        throw malformed("field count does not match declared counts");
      }
      std::string lemma = detail::to_lower_ascii(fields[0]);
      std::vector<SynsetId> senses;
      senses.reserve(*synset_count);
      for (std::size_t k = fields.size() - *synset_count; k < fields.size(); ++k) {
        auto offset = detail::parse_int<std::uint32_t>(fields[k]);
        if (!offset) throw malformed("bad synset offset");
        SynsetId id{pos, *offset};
        auto it = lex.by_id_.find(id);
        if (it == lex.by_id_.end()) throw malformed("unknown synset " + to_string(id));
        const auto& lemmas = lex.synsets_[it->second].synset.lemmas;
        if (std::find(lemmas.begin(), lemmas.end(), lemma) == lemmas.end()) {
          throw malformed("synset " + to_string(id) + " does not list lemma '" + lemma + "'");
        }
        senses.push_back(id);
      }
      index.insert_or_assign(std::move(lemma), std::move(senses));
    }
  }

  try {
    lex.finalize(true);
  } catch (const Error& e) {
    throw LoadError(dir, 0, e.what());
  }
  return lex;
}

Lexicon Lexicon::from_synsets(std::vector<Synset> synsets, LemmaRelationTable relations) {
  Lexicon lex;
  for (auto& s : synsets) {
    if (lex.by_id_.contains(s.id)) {
      throw std::invalid_argument("duplicate synset " + to_string(s.id));
    }
    for (auto& lemma : s.lemmas) {
      if (lemma.empty()) throw std::invalid_argument("empty lemma in " + to_string(s.id));
      lemma = detail::to_lower_ascii(lemma);
    }
    lex.by_id_.emplace(s.id, lex.synsets_.size());
    Node node;
    node.synset = std::move(s);
    lex.synsets_.push_back(std::move(node));
  }
  for (const auto& node : lex.synsets_) {
    auto& index = lex.index_[slot(node.synset.id.pos)];
    for (const auto& lemma : node.synset.lemmas) {
      auto& senses = index[lemma];
      if (std::find(senses.begin(), senses.end(), node.synset.id) == senses.end()) {
        senses.push_back(node.synset.id);
      }
    }
  }
  auto check_ref = [&](const LemmaRef& ref) {
    auto it = lex.by_id_.find(ref.synset);
    if (it == lex.by_id_.end() ||
        ref.lemma_index >= lex.synsets_[it->second].synset.lemmas.size()) {
      throw std::invalid_argument("dangling lemma reference into " + to_string(ref.synset));
    }
  };
  for (const auto& [from, to] : relations.pertainyms) {
    check_ref(from);
    check_ref(to);
    lex.add_relation(&Node::pertainyms, from, to);
  }
  for (const auto& [from, to] : relations.related_forms) {
    check_ref(from);
    check_ref(to);
    lex.add_relation(&Node::related_forms, from, to);
  }
  try {
    lex.finalize(false);
  } catch (const Error& e) {
    throw std::invalid_argument(e.what());
  }
  return lex;
}

void Lexicon::add_relation(std::vector<std::vector<LemmaRef>> Node::*table, const LemmaRef& from,
                           const LemmaRef& to) {
  Node& n = synsets_[by_id_.at(from.synset)];
  auto& per_lemma = n.*table;
  if (per_lemma.size() < n.synset.lemmas.size()) per_lemma.resize(n.synset.lemmas.size());
  auto& targets = per_lemma.at(from.lemma_index);
  if (std::find(targets.begin(), targets.end(), to) == targets.end()) targets.push_back(to);
}

void Lexicon::finalize(bool break_cycles) {
  for (const auto& n : synsets_) {
    for (const auto& h : n.synset.hypernyms) {
      if (!by_id_.contains(h)) {
        throw Error("hypernym of " + to_string(n.synset.id) + " is unknown");
      }
      if (h.pos != n.synset.id.pos) {
        throw Error("hypernym of " + to_string(n.synset.id) + " crosses categories");
      }
    }
  }

  // Longest-path depth, iterative post-order with cycle detection.
  enum : int { kUnvisited = 0, kActive = -1 };
  for (auto& n : synsets_) n.depth = kUnvisited;
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (node, next hypernym)
  for (std::size_t start = 0; start < synsets_.size(); ++start) {
    if (synsets_[start].depth != kUnvisited) continue;
    stack.emplace_back(start, 0);
    synsets_[start].depth = kActive;
    while (!stack.empty()) {
      auto& [idx, next] = stack.back();
      Node& n = synsets_[idx];
      if (next < n.synset.hypernyms.size()) {
        std::size_t parent = by_id_.at(n.synset.hypernyms[next++]);
        if (synsets_[parent].depth == kActive) {
          std::string edge = to_string(n.synset.id) + " -> " + to_string(synsets_[parent].synset.id);
          if (!break_cycles) throw Error("hypernym cycle through " + edge);
          // WordNet 3.0 ships one such loop (restrain/inhibit); drop the closing edge.
          warn("dropping hypernym edge " + edge + " that closes a cycle");
          --next;
          n.synset.hypernyms.erase(n.synset.hypernyms.begin() + static_cast<std::ptrdiff_t>(next));
          continue;
        }
        if (synsets_[parent].depth == kUnvisited) {
          synsets_[parent].depth = kActive;
          stack.emplace_back(parent, 0);
        }
        continue;
      }
      int best = 0;
      for (const auto& h : n.synset.hypernyms) best = std::max(best, synsets_[by_id_.at(h)].depth);
      n.depth = best + 1;
      stack.pop_back();
    }
  }

  hypernym_edges_ = 0;
  roots_.fill(0);
  for (const auto& n : synsets_) {
    hypernym_edges_ += n.synset.hypernyms.size();
    if (n.synset.hypernyms.empty()) ++roots_[slot(n.synset.id.pos)];
  }
}

const Lexicon::Node& Lexicon::node(const SynsetId& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw std::out_of_range("unknown synset " + to_string(id));
  return synsets_[it->second];
}

std::span<const SynsetId> Lexicon::synsets_of(std::string_view lemma, PartOfSpeech pos) const {
  const auto& index = index_[slot(pos)];
  auto it = index.find(lemma);
  if (it == index.end()) return {};
  return it->second;
}

bool Lexicon::contains(std::string_view lemma, PartOfSpeech pos) const {
  return !synsets_of(lemma, pos).empty();
}

bool Lexicon::has_synset(const SynsetId& id) const { return by_id_.contains(id); }

const Synset& Lexicon::synset(const SynsetId& id) const { return node(id).synset; }

int Lexicon::depth(const SynsetId& id) const { return node(id).depth; }

std::vector<std::pair<SynsetId, int>> Lexicon::ancestors(const SynsetId& id) const {
  std::vector<std::pair<SynsetId, int>> out;
  std::vector<std::size_t> frontier{by_id_.at(id)};
  out.emplace_back(id, synsets_[frontier.front()].depth);
  while (!frontier.empty()) {
    const Node& n = synsets_[frontier.back()];
    frontier.pop_back();
    for (const auto& h : n.synset.hypernyms) {
      bool seen = std::any_of(out.begin(), out.end(), [&](const auto& e) { return e.first == h; });
      if (seen) continue;
      std::size_t idx = by_id_.at(h);
      out.emplace_back(h, synsets_[idx].depth);
      frontier.push_back(idx);
    }
  }
  return out;
}

double Lexicon::wu_palmer(const SynsetId& a, const SynsetId& b) const {
  if (a.pos != b.pos) {
    throw std::invalid_argument("wu_palmer across categories: " + to_string(a) + " vs " +
                                to_string(b));
  }
  const Node& na = node(a);
  const Node& nb = node(b);
  if (a == b) return 1.0;
  if (a.pos == PartOfSpeech::Adjective || a.pos == PartOfSpeech::Adverb) return 0.0;

  const int shift = roots_[slot(a.pos)] > 1 ? 1 : 0;
  auto up_a = ancestors(a);
  auto up_b = ancestors(b);
  int lcs = 0;
  for (const auto& [id, d] : up_b) {
    if (d <= lcs) continue;
    if (std::any_of(up_a.begin(), up_a.end(), [&](const auto& e) { return e.first == id; })) {
      lcs = d;
    }
  }
  if (lcs + shift == 0) return 0.0;
  return 2.0 * (lcs + shift) / static_cast<double>(na.depth + nb.depth + 2 * shift);
}

std::span<const LemmaRef> Lexicon::pertainyms(const LemmaRef& lemma) const {
  const Node& n = node(lemma.synset);
  if (lemma.lemma_index >= n.pertainyms.size()) return {};
  return n.pertainyms[lemma.lemma_index];
}

std::span<const LemmaRef> Lexicon::related_forms(const LemmaRef& lemma) const {
  const Node& n = node(lemma.synset);
  if (lemma.lemma_index >= n.related_forms.size()) return {};
  return n.related_forms[lemma.lemma_index];
}

std::vector<SynsetId> Lexicon::synset_ids(PartOfSpeech pos) const {
  std::vector<SynsetId> out;
  for (const auto& n : synsets_) {
    if (n.synset.id.pos == pos) out.push_back(n.synset.id);
  }
  return out;
}

}  // namespace slrkit
