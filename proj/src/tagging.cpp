#include "slrkit/tagging.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "slrkit/error.hpp"
#include "text_util.hpp"
#include "unicode.hpp"

namespace slrkit {

namespace {

constexpr std::array<std::string_view, 9> kTagNames = {"NOUN", "PROPN", "VERB", "AUX", "ADJ",
                                                       "ADV",  "DET",   "PUNCT", "OTHER"};

using WordSet = std::unordered_set<std::string_view>;

const WordSet& determiners() {
  static const WordSet s = {"the",  "a",       "an",      "this",  "these", "those",
                            "every", "each",   "some",    "any",   "no",    "another",
                            "its",  "their",   "his",     "her",   "our",   "your",
                            "my",   "all",     "both",    "either", "neither"};
  return s;
}

const WordSet& be_forms() {
  static const WordSet s = {"be", "am", "is", "are", "was", "were", "been", "being"};
  return s;
}

const WordSet& modals() {
  static const WordSet s = {"will", "would", "can", "could", "may", "might",
                            "shall", "should", "must"};
  return s;
}

const WordSet& have_do_forms() {
  static const WordSet s = {"have", "has", "had", "do", "does", "did"};
  return s;
}

// Pronouns, prepositions, conjunctions, particles and wh-words.
const WordSet& function_words() {
  static const WordSet s = {
      "i",       "me",      "you",     "he",      "him",     "she",     "it",      "we",
      "us",      "they",    "them",    "itself",  "themselves", "himself", "herself",
      "ourselves", "myself", "yourself", "who",   "whom",    "whose",   "which",   "what",
      "that",    "there",   "where",   "when",    "why",     "how",     "whether", "if",
      "than",    "and",     "or",      "but",     "nor",     "of",      "in",      "on",
      "at",      "by",      "for",     "with",    "about",   "against", "between", "into",
      "through", "during",  "before",  "after",   "above",   "below",   "to",      "from",
      "over",    "under",   "because", "as",      "until",   "while",   "within",  "without",
      "towards", "toward",  "upon",    "among",   "across",  "via",     "per",     "not",
      "n't",     "'s",      "whereas", "whilst",  "unless",  "although", "though", "since",
      "onto",    "throughout", "despite", "beyond", "along", "around", "behind",  "beside",
      "besides", "near",    "off",     "out",     "up",      "down",    "like",    "unlike"};
  return s;
}

const WordSet& subject_pronouns() {
  static const WordSet s = {"i", "you", "he", "she", "it", "we", "they", "who", "which", "that"};
  return s;
}

bool is_aux_word(std::string_view w) {
  return be_forms().contains(w) || modals().contains(w) || have_do_forms().contains(w);
}

std::string aux_lemma(std::string_view w) {
  if (be_forms().contains(w)) return "be";
  if (w == "has" || w == "had" || w == "have") return "have";
  if (w == "does" || w == "did" || w == "do") return "do";
  return std::string(w);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.ends_with(suffix);
}

bool is_number(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',' && c != '-' && c != '%') {
      return false;
    }
  }
  return digit;
}

bool is_punct_token(std::string_view text) {
  auto cps = detail::decode_utf8(text);
  return std::none_of(cps.begin(), cps.end(), detail::is_word_char);
}

bool starts_upper(std::string_view text) {
  auto cps = detail::decode_utf8(text);
  return !cps.empty() && detail::is_upper_char(cps.front());
}

std::optional<Tag> suffix_guess(std::string_view w) {
  for (auto suf : {"ly"}) {
    if (ends_with(w, suf)) return Tag::Adv;
  }
  for (auto suf : {"tion", "sion", "ness", "ment", "ity", "ism"}) {
    if (ends_with(w, suf)) return Tag::Noun;
  }
  for (auto suf : {"ize", "ise", "ify", "izes", "ises", "ized", "ised", "izing", "ising"}) {
    if (ends_with(w, suf)) return Tag::Verb;
  }
  for (auto suf : {"al", "ous", "ive", "ful", "ic", "able", "ible", "less"}) {
    if (ends_with(w, suf)) return Tag::Adj;
  }
  return std::nullopt;
}

std::size_t slot(PartOfSpeech pos) { return static_cast<std::size_t>(pos); }

Tag tag_of(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::Noun: return Tag::Noun;
    case PartOfSpeech::Verb: return Tag::Verb;
    case PartOfSpeech::Adjective: return Tag::Adj;
    case PartOfSpeech::Adverb: return Tag::Adv;
  }
  return Tag::Other;
}

struct Candidate {
  std::string lower;
  std::array<std::optional<std::string>, 4> lemmas;  // by PartOfSpeech
  bool punct = false;
  bool closed = false;  // closed-class or number

  bool has(PartOfSpeech pos) const { return lemmas[slot(pos)].has_value(); }
  bool unknown() const {
    return !punct && !closed && std::none_of(lemmas.begin(), lemmas.end(),
                                             [](const auto& l) { return l.has_value(); });
  }
};

bool sentence_start(const std::vector<TaggedToken>& tokens, std::size_t i) {
  if (i == 0) return true;
  std::string_view prev = tokens[i - 1].text;
  return prev == "." || prev == "!" || prev == "?" || prev == ":" || prev == "\"";
}

}  // namespace

std::string_view to_string(Tag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

std::optional<Tag> parse_tag(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<Tag>(i);
  }
  return std::nullopt;
}

bool same_content(const TaggedDocument& a, const TaggedDocument& b) {
  if (a.tokens.size() != b.tokens.size() || a.chunks != b.chunks) return false;
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    const auto& x = a.tokens[i];
    const auto& y = b.tokens[i];
    if (x.text != y.text || x.lemma != y.lemma || x.tag != y.tag) return false;
  }
  return true;
}

std::vector<CharSpan> tokenize(std::string_view text) {
  std::vector<CharSpan> out;
  std::vector<std::size_t> offsets;
  const std::u32string cps = detail::decode_utf8(text, offsets);

  auto joiner = [](char32_t c) {
    return c == U'-' || c == U'\'' || c == U'\u2019' || c == U'\u2010' || c == U'\u2011';
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    char32_t c = cps[i];
    if (detail::is_space_char(c)) {
      ++i;
      continue;
    }
    if (!detail::is_word_char(c)) {
      out.push_back({offsets[i], offsets[i + 1]});
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < cps.size()) {
      if (detail::is_word_char(cps[j])) {
        ++j;
      } else if (j + 1 < cps.size() && detail::is_word_char(cps[j + 1]) &&
                 (joiner(cps[j]) ||
                  ((cps[j] == U'.' || cps[j] == U',') && U'0' <= cps[j - 1] &&
                   cps[j - 1] <= U'9' && U'0' <= cps[j + 1] && cps[j + 1] <= U'9'))) {
        j += 2;
      } else {
        break;
      }
    }
    out.push_back({offsets[i], offsets[j]});
    i = j;
  }
  return out;
}

std::optional<std::string> Lemmatizer::lemma(std::string_view word, PartOfSpeech pos) const {
  if (word.empty()) return std::nullopt;
  if (lexicon_->contains(word, pos)) return std::string(word);

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };
  static constexpr Rule kNoun[] = {{"s", ""},     {"ses", "s"}, {"xes", "x"},  {"zes", "z"},
                                   {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"}};
  static constexpr Rule kVerb[] = {{"s", ""},  {"ies", "y"}, {"es", "e"},  {"es", ""},
                                   {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""}};
  static constexpr Rule kAdj[] = {{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}};

  std::span<const Rule> rules;
  switch (pos) {
    case PartOfSpeech::Noun: rules = kNoun; break;
    case PartOfSpeech::Verb: rules = kVerb; break;
    case PartOfSpeech::Adjective: rules = kAdj; break;
    case PartOfSpeech::Adverb: return std::nullopt;
  }

  auto accept = [&](const std::string& candidate) {
    return !candidate.empty() && lexicon_->contains(candidate, pos);
  };
  for (const auto& r : rules) {
    if (!ends_with(word, r.suffix)) continue;
    std::string stem(word.substr(0, word.size() - r.suffix.size()));
    std::string candidate = stem + std::string(r.replacement);
    if (accept(candidate)) return candidate;
    // fuelled -> fuel, stopped -> stop
    if (pos == PartOfSpeech::Verb && r.replacement.empty() &&
        (r.suffix == "ed" || r.suffix == "ing") && stem.size() >= 3 &&
        stem[stem.size() - 1] == stem[stem.size() - 2]) {
      std::string undoubled = stem.substr(0, stem.size() - 1);
      if (accept(undoubled)) return undoubled;
    }
  }
  return std::nullopt;
}

TaggedDocument tag(std::string text, const Lexicon& lexicon) {
  TaggedDocument doc;
  doc.source = std::move(text);
  const Lemmatizer lemmatizer(lexicon);

  std::vector<Candidate> cand;
  for (const auto& span : tokenize(doc.source)) {
    TaggedToken tok;
    tok.text = doc.source.substr(span.start, span.size());
    tok.span = span;
    Candidate c;
    c.lower = detail::lowercase(tok.text);
    if (is_punct_token(tok.text)) {
      c.punct = true;
    } else if (is_number(tok.text) || determiners().contains(c.lower) ||
               function_words().contains(c.lower) || is_aux_word(c.lower)) {
      c.closed = true;
    } else {
      for (PartOfSpeech pos : kAllPartsOfSpeech) {
        c.lemmas[slot(pos)] = lemmatizer.lemma(c.lower, pos);
      }
    }
    doc.tokens.push_back(std::move(tok));
    cand.push_back(std::move(c));
  }

  const std::size_t n = doc.tokens.size();
  auto noun_capable = [&](std::size_t j) {
    return j < n && (cand[j].has(PartOfSpeech::Noun) || cand[j].unknown());
  };
  auto adj_capable = [&](std::size_t j) { return j < n && cand[j].has(PartOfSpeech::Adjective); };
  auto follows_aux = [&](std::size_t i) {
    if (i == 0) return false;
    std::string_view prev = cand[i - 1].lower;
    if ((prev == "not" || prev == "n't") && i >= 2) prev = cand[i - 2].lower;
    return is_aux_word(prev);
  };

  for (std::size_t i = 0; i < n; ++i) {
    auto& tok = doc.tokens[i];
    const auto& c = cand[i];
    const Tag prev_tag = i > 0 ? doc.tokens[i - 1].tag : Tag::Punct;
    const std::string_view prev_word = i > 0 ? std::string_view(cand[i - 1].lower) : "";

    if (c.punct) {
      tok.tag = Tag::Punct;
      tok.lemma = tok.text;
      continue;
    }
    if (c.closed) {
      tok.lemma = c.lower;
      if (determiners().contains(c.lower)) {
        tok.tag = Tag::Det;
      } else if (is_aux_word(c.lower)) {
        tok.tag = Tag::Aux;  // provisional, resolved below
        tok.lemma = aux_lemma(c.lower);
      } else {
        tok.tag = Tag::Other;
      }
      continue;
    }

    if (c.unknown()) {
      auto guess = suffix_guess(c.lower);
      tok.tag = guess.value_or(Tag::Noun);
      if (tok.tag == Tag::Noun && !sentence_start(doc.tokens, i) && starts_upper(tok.text)) {
        tok.tag = Tag::Propn;
      }
      tok.lemma = c.lower;
      continue;
    }

    const bool has_n = c.has(PartOfSpeech::Noun);
    const bool has_v = c.has(PartOfSpeech::Verb);
    const bool has_a = c.has(PartOfSpeech::Adjective);
    std::optional<PartOfSpeech> pick;
    auto candidates = std::count_if(c.lemmas.begin(), c.lemmas.end(),
                                    [](const auto& l) { return l.has_value(); });
    if (candidates == 1) {
      for (PartOfSpeech pos : kAllPartsOfSpeech)
        if (c.has(pos)) pick = pos;
    } else if (has_v && follows_aux(i)) {
      pick = PartOfSpeech::Verb;
    } else if (has_v && prev_word == "to" && (!has_n || !noun_capable(i + 1))) {
      pick = PartOfSpeech::Verb;
    } else if (has_a && (noun_capable(i + 1) || adj_capable(i + 1))) {
      pick = PartOfSpeech::Adjective;
    } else if (has_n && (prev_tag == Tag::Det || prev_tag == Tag::Adj)) {
      pick = PartOfSpeech::Noun;
    } else if (has_v && (ends_with(c.lower, "ing") || ends_with(c.lower, "ed"))) {
      pick = PartOfSpeech::Verb;
    } else if (has_v && (prev_tag == Tag::Adv || subject_pronouns().contains(prev_word))) {
      pick = PartOfSpeech::Verb;
    } else {
      for (PartOfSpeech pos : kAllPartsOfSpeech) {
        if (c.has(pos)) {
          pick = pos;
          break;
        }
      }
    }
    tok.tag = tag_of(*pick);
    tok.lemma = *c.lemmas[slot(*pick)];
    if (tok.tag == Tag::Noun && !sentence_start(doc.tokens, i) && starts_upper(tok.text)) {
      tok.tag = Tag::Propn;
    }
  }

  // Auxiliaries: a listed word followed within two tokens by a verb. Otherwise
  // be-forms and modals stay AUX; have/do act as main verbs.
  for (std::size_t i = 0; i < n; ++i) {
    auto& tok = doc.tokens[i];
    if (tok.tag != Tag::Aux) continue;
    bool before_verb = false;
    for (std::size_t k = i + 1; k < std::min(n, i + 3); ++k) {
      if (doc.tokens[k].tag == Tag::Verb) before_verb = true;
    }
    if (before_verb) continue;
    if (have_do_forms().contains(cand[i].lower) && lexicon.contains(tok.lemma, PartOfSpeech::Verb)) {
      tok.tag = Tag::Verb;
    }
  }

  doc.chunks = noun_chunks(doc);
  return doc;
}

std::vector<NounChunk> noun_chunks(const TaggedDocument& doc) {
  const auto& toks = doc.tokens;
  const std::size_t n = toks.size();
  auto nominal = [&](std::size_t k) {
    return toks[k].tag == Tag::Noun || toks[k].tag == Tag::Propn;
  };
  auto chunkable = [&](std::size_t k) { return nominal(k) || toks[k].tag == Tag::Adj; };
  auto plural = [&](std::size_t k) {
    return toks[k].tag == Tag::Noun && detail::lowercase(toks[k].text) != toks[k].lemma;
  };

  std::vector<NounChunk> out;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = toks[i].tag == Tag::Det ? i + 1 : i;
    std::size_t end = j;
    while (end < n && chunkable(end)) {
      ++end;
      if (plural(end - 1) && end < n && chunkable(end)) break;
    }
    std::optional<std::size_t> last_noun;
    for (std::size_t k = j; k < end; ++k)
      if (nominal(k)) last_noun = k;
    if (last_noun) {
      out.push_back({i, *last_noun + 1, *last_noun});
      i = *last_noun + 1;
    } else {
      i = std::max(i + 1, end);
    }
  }
  return out;
}

TaggedDocument parse_pretagged(std::istream& in, const std::filesystem::path& source_name) {
  TaggedDocument doc;
  std::string line;
  std::size_t line_no = 0;
  bool sentence_open = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) {
      sentence_open = false;
      continue;
    }
    std::vector<std::string_view> cols;
    std::string_view rest(line);
    for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos;) {
      cols.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    cols.push_back(rest);
    if (cols.size() != 3) {
      throw LoadError(source_name, line_no,
                      "expected 3 tab-separated columns, got " + std::to_string(cols.size()));
    }
    auto tag = parse_tag(cols[2]);
    if (!tag) throw LoadError(source_name, line_no, "unknown tag '" + std::string(cols[2]) + "'");
    if (cols[0].empty()) throw LoadError(source_name, line_no, "empty surface form");
    if (cols[1].empty() && *tag != Tag::Punct) {
      throw LoadError(source_name, line_no, "empty lemma");
    }
    if (!doc.source.empty()) doc.source += sentence_open ? " " : "\n";
    TaggedToken tok;
    tok.text = std::string(cols[0]);
    tok.lemma = cols[1].empty() ? tok.text : std::string(cols[1]);
    tok.tag = *tag;
    tok.span = {doc.source.size(), doc.source.size() + tok.text.size()};
    doc.source += tok.text;
    doc.tokens.push_back(std::move(tok));
    sentence_open = true;
  }
  doc.chunks = noun_chunks(doc);
  return doc;
}

TaggedDocument ingest_pretagged(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, 0, "cannot open pretagged file");
  return parse_pretagged(in, path);
}

std::string export_pretagged(const TaggedDocument& doc) {
  std::ostringstream out;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const auto& t = doc.tokens[i];
    out << t.text << '\t' << t.lemma << '\t' << to_string(t.tag) << '\n';
    bool end_of_sentence = t.tag == Tag::Punct && (t.text == "." || t.text == "!" || t.text == "?");
    if (end_of_sentence && i + 1 < doc.tokens.size()) out << '\n';
  }
  return out.str();
}

}  // namespace slrkit
