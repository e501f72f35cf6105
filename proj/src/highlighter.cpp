#include "slrkit/highlighter.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "slrkit/error.hpp"

namespace slrkit {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::string_view kRoleNames[] = {"Entity", "Relation", "Property", "Support"};

std::string format_score(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

std::string format_similar(const SimilarTo& s) {
  return "SimilarTo('" + s.keyword + "', " + format_score(s.score) + ", '" +
         std::string(to_string(s.kind)) + "')";
}

bool is_word(const TaggedToken& t) { return t.tag != Tag::Punct; }
bool is_nominal(const TaggedToken& t) { return t.tag == Tag::Noun || t.tag == Tag::Propn; }

// "Changing lifestyles", "processed food": participles stay part of the entity.
bool is_participle(const TaggedToken& t) {
  auto ends = [&](std::string_view suf) {
    return t.text.size() > suf.size() + 2 && t.text.ends_with(suf);
  };
  return t.tag == Tag::Adj && (ends("ing") || ends("ed"));
}

std::string_view css_class(Role role) {
  switch (role) {
    case Role::Entity: return "hl-entity";
    case Role::Relation: return "hl-relation";
    case Role::Property: return "hl-property";
    case Role::Support: return "hl-support";
  }
  return "";
}

std::string_view ansi_color(Role role) {
  switch (role) {
    case Role::Entity: return "\x1b[31m";
    case Role::Relation: return "\x1b[34m";
    case Role::Property: return "\x1b[35m";
    case Role::Support: return "\x1b[33m";
  }
  return "";
}

constexpr std::string_view kAnsiReset = "\x1b[0m";

constexpr std::string_view kStylesheet =
    "<style>\n"
    ".hl-doc{white-space:pre-wrap}\n"
    ".hl-entity{color:#c62828}\n"
    ".hl-relation{color:#1565c0}\n"
    ".hl-property{color:#7b1fa2}\n"
    ".hl-support{background:#fff59d}\n"
    "</style>\n";

void html_escape(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
}

CharSpan char_span(const HighlightedDocument& doc, const HighlightSpan& s) {
  return {doc.doc.tokens[s.first].span.start, doc.doc.tokens[s.last - 1].span.end};
}

std::string span_text(const HighlightedDocument& doc, const HighlightSpan& s) {
  auto cs = char_span(doc, s);
  return doc.doc.source.substr(cs.start, cs.size());
}

ojson similar_json(const SimilarTo& s) {
  return ojson{{"form", "SimilarTo"},
               {"keyword", s.keyword},
               {"score", s.score},
               {"kind", std::string(to_string(s.kind))}};
}

ojson explanation_json(const Explanation& e) {
  if (const auto* s = std::get_if<SimilarTo>(&e)) return similar_json(*s);
  if (const auto* n = std::get_if<NounChunkPart>(&e)) {
    ojson parts = ojson::array();
    for (const auto& p : n->parts) parts.push_back(similar_json(p));
    return ojson{{"form", "NCP"}, {"chunk", n->chunk_text}, {"parts", parts}};
  }
  return ojson{{"form", "SupportOf"}, {"target", std::get<SupportOf>(e).target}};
}

VerdictKind parse_kind(const std::string& s) {
  if (s == "wup") return VerdictKind::Wup;
  if (s == "vec") return VerdictKind::Vec;
  if (s == "none") return VerdictKind::None;
  throw std::invalid_argument("unknown similarity kind '" + s + "'");
}

SimilarTo similar_from_json(const ojson& j) {
  return {j.at("keyword").get<std::string>(), j.at("score").get<double>(),
          parse_kind(j.at("kind").get<std::string>())};
}

Explanation explanation_from_json(const ojson& j) {
  auto form = j.at("form").get<std::string>();
  if (form == "SimilarTo") return similar_from_json(j);
  if (form == "NCP") {
    NounChunkPart n;
    n.chunk_text = j.at("chunk").get<std::string>();
    for (const auto& p : j.at("parts")) n.parts.push_back(similar_from_json(p));
    return n;
  }
  if (form == "SupportOf") return SupportOf{j.at("target").get<std::size_t>()};
  throw std::invalid_argument("unknown explanation form '" + form + "'");
}

void append_explanations(std::string& out, const HighlightedDocument& doc) {
  for (const auto& s : doc.spans) {
    out += "  ";
    out += to_string(s.role);
    out += " '" + span_text(doc, s) + "': ";
    out += format_explanation(s.explanation);
    out += '\n';
  }
}

}  // namespace

std::string_view to_string(Role role) { return kRoleNames[static_cast<std::size_t>(role)]; }

std::optional<Role> parse_role(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kRoleNames); ++i) {
    if (kRoleNames[i] == name) return static_cast<Role>(i);
  }
  return std::nullopt;
}

std::string format_explanation(const Explanation& e) {
  if (const auto* s = std::get_if<SimilarTo>(&e)) return format_similar(*s);
  if (const auto* n = std::get_if<NounChunkPart>(&e)) {
    std::string out = "NCP(" + n->chunk_text + ", [";
    for (std::size_t i = 0; i < n->parts.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_similar(n->parts[i]);
    }
    return out + "])";
  }
  return "SupportOf(" + std::to_string(std::get<SupportOf>(e).target) + ")";
}

HighlightedDocument highlight(TaggedDocument doc, const KeywordSet& keywords,
                              const VectorStore& store, const Lexicon& lexicon,
                              const SimilarityConfig& config) {
  HighlightedDocument out;
  out.doc = std::move(doc);
  const auto& toks = out.doc.tokens;
  const std::size_t n = toks.size();
  std::vector<std::optional<std::size_t>> owner(n);  // token -> span index
  std::vector<HighlightSpan> spans;

  auto add_span = [&](HighlightSpan s) {
    for (std::size_t k = s.first; k < s.last; ++k) owner[k] = spans.size();
    spans.push_back(std::move(s));
  };
  auto to_similar = [](const SimilarityVerdict& v) {
    return SimilarTo{v.matched_keyword.value_or(""), v.score, v.kind};
  };
  auto property_verdict = [&](const TaggedToken& t) {
    auto pos = t.tag == Tag::Adv ? PartOfSpeech::Adverb : PartOfSpeech::Adjective;
    return similarity(t.lemma, keywords.properties, pos, store, lexicon, config);
  };

  // Noun chunks. Adjectives left over in a highlighted chunk are handled
  // after the entity spans exist.
  std::vector<std::pair<std::size_t, std::size_t>> pending_properties;  // (token, head)
  for (const auto& chunk : out.doc.chunks) {
    std::vector<std::optional<SimilarityVerdict>> verdicts(chunk.last - chunk.first);
    std::optional<std::size_t> first_in_span;
    for (std::size_t k = chunk.first; k < chunk.last; ++k) {
      const auto& t = toks[k];
      if (t.tag == Tag::Det) continue;
      auto pos = is_nominal(t) ? PartOfSpeech::Noun : PartOfSpeech::Adjective;
      auto v = similarity(t.lemma, pos, keywords.entities, PartOfSpeech::Noun, store, lexicon,
                          config);
      if (v.kind != VerdictKind::None) {
        verdicts[k - chunk.first] = v;
        if (!first_in_span) first_in_span = k;
      } else if ((is_nominal(t) || is_participle(t)) && !first_in_span) {
        first_in_span = k;
      }
    }
    bool matched = std::any_of(verdicts.begin(), verdicts.end(),
                               [](const auto& v) { return v.has_value(); });
    if (!matched) continue;

    HighlightSpan span;
    span.first = *first_in_span;
    span.last = chunk.last;
    span.role = Role::Entity;
    std::vector<SimilarTo> parts;
    for (std::size_t k = span.first; k < span.last; ++k) {
      if (const auto& v = verdicts[k - chunk.first]) {
        parts.push_back(to_similar(*v));
        span.score = std::max(span.score, v->score);
      }
    }
    if (span.last - span.first == 1) {
      span.explanation = parts.front();
    } else {
      CharSpan cs{toks[span.first].span.start, toks[span.last - 1].span.end};
      span.explanation = NounChunkPart{out.doc.source.substr(cs.start, cs.size()), parts};
    }
    for (std::size_t k = chunk.first; k < span.first; ++k) {
      if (toks[k].tag == Tag::Adj) pending_properties.emplace_back(k, chunk.head);
    }
    add_span(std::move(span));
  }

  // Relations.
  for (std::size_t i = 0; i < n; ++i) {
    if (toks[i].tag != Tag::Verb) continue;
    auto v = similarity(toks[i].lemma, keywords.relations, PartOfSpeech::Verb, store, lexicon,
                        config);
    if (v.kind == VerdictKind::None) continue;
    add_span({i, i + 1, Role::Relation, v.score, to_similar(v)});
  }

  // Properties: adjectives of highlighted chunks, adjectives directly before
  // one (across punctuation), then any adjective or adverb similar to P.
  auto entity_head_after = [&](std::size_t i) -> std::optional<std::size_t> {
    std::size_t k = i + 1;
    while (k < n && toks[k].tag == Tag::Punct && toks[k].text != "," && toks[k].text != ".") ++k;
    if (k == i + 1 && k < n && toks[k].tag == Tag::Punct) return std::nullopt;
    for (const auto& chunk : out.doc.chunks) {
      if (chunk.first == k && owner[chunk.head] && spans[*owner[chunk.head]].role == Role::Entity) {
        return chunk.head;
      }
    }
    return std::nullopt;
  };
  std::vector<std::optional<std::size_t>> support_head(n);
  for (auto [k, head] : pending_properties) support_head[k] = head;
  for (std::size_t i = 0; i < n; ++i) {
    if (owner[i] || (toks[i].tag != Tag::Adj && toks[i].tag != Tag::Adv)) continue;
    auto v = property_verdict(toks[i]);
    if (v.kind != VerdictKind::None) {
      add_span({i, i + 1, Role::Property, v.score, to_similar(v)});
      continue;
    }
    std::optional<std::size_t> head = support_head[i];
    if (!head && toks[i].tag == Tag::Adj) head = entity_head_after(i);
    if (head) {
      add_span({i, i + 1, Role::Property, spans[*owner[*head]].score, SupportOf{*head}});
    }
  }

  // Support words.
  for (std::size_t i = 0; i < n; ++i) {
    if (toks[i].tag != Tag::Aux || owner[i]) continue;
    for (std::size_t k = i + 1; k < std::min(n, i + 3); ++k) {
      if (owner[k] && spans[*owner[k]].role == Role::Relation) {
        add_span({i, i + 1, Role::Support, spans[*owner[k]].score, SupportOf{k}});
        break;
      }
    }
  }

  std::sort(spans.begin(), spans.end(),
            [](const HighlightSpan& a, const HighlightSpan& b) { return a.first < b.first; });
  out.spans = std::move(spans);
  try {
    out.rate = highlighting_rate(out);
  } catch (const UndefinedRate&) {
    out.rate = 0.0;
  }
  return out;
}

std::optional<std::string> explain(const HighlightedDocument& doc, std::size_t token) {
  if (token >= doc.doc.tokens.size()) {
    throw std::out_of_range("token index " + std::to_string(token) + " out of range");
  }
  for (const auto& s : doc.spans) {
    if (s.first <= token && token < s.last) return format_explanation(s.explanation);
  }
  return std::nullopt;
}

double highlighting_rate(const HighlightedDocument& doc) {
  const auto& toks = doc.doc.tokens;
  std::size_t words = 0;
  for (const auto& t : toks) words += is_word(t) ? 1 : 0;
  if (words == 0) throw UndefinedRate("highlighting rate of a document without words");
  std::size_t highlighted = 0;
  for (const auto& s : doc.spans) {
    for (std::size_t k = s.first; k < s.last; ++k) highlighted += is_word(toks[k]) ? 1 : 0;
  }
  return static_cast<double>(highlighted) / static_cast<double>(words);
}

std::optional<RenderFormat> parse_render_format(std::string_view name) {
  if (name == "ansi") return RenderFormat::Ansi;
  if (name == "html") return RenderFormat::Html;
  if (name == "json") return RenderFormat::Json;
  return std::nullopt;
}

std::string render(const HighlightedDocument& doc, RenderFormat format,
                   const RenderOptions& options) {
  const std::string& src = doc.doc.source;
  std::string out;

  if (format == RenderFormat::Json) {
    ojson tokens = ojson::array();
    for (const auto& t : doc.doc.tokens) {
      tokens.push_back({{"text", t.text},
                        {"lemma", t.lemma},
                        {"tag", std::string(to_string(t.tag))},
                        {"start", t.span.start},
                        {"end", t.span.end}});
    }
    ojson chunks = ojson::array();
    for (const auto& c : doc.doc.chunks) {
      chunks.push_back({{"first", c.first}, {"last", c.last}, {"head", c.head}});
    }
    ojson spans = ojson::array();
    for (const auto& s : doc.spans) {
      auto cs = char_span(doc, s);
      spans.push_back({{"first_token", s.first},
                       {"last_token", s.last},
                       {"start", cs.start},
                       {"end", cs.end},
                       {"text", src.substr(cs.start, cs.size())},
                       {"role", std::string(to_string(s.role))},
                       {"score", s.score},
                       {"explanation", format_explanation(s.explanation)},
                       {"detail", explanation_json(s.explanation)}});
    }
    ojson j{{"text", src}, {"rate", doc.rate}, {"tokens", tokens}, {"chunks", chunks},
            {"spans", spans}};
    return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
  }

  const bool html = format == RenderFormat::Html;
  if (html) {
    out += kStylesheet;
    out += "<div class=\"hl-doc\">";
  }
  std::size_t pos = 0;
  for (const auto& s : doc.spans) {
    auto cs = char_span(doc, s);
    std::string_view before(src.data() + pos, cs.start - pos);
    std::string_view inside(src.data() + cs.start, cs.size());
    if (html) {
      html_escape(out, before);
      out += "<span class=\"";
      out += css_class(s.role);
      out += "\" title=\"";
      html_escape(out, format_explanation(s.explanation));
      out += "\">";
      html_escape(out, inside);
      out += "</span>";
    } else {
      out += before;
      out += ansi_color(s.role);
      out += inside;
      out += kAnsiReset;
    }
    pos = cs.end;
  }
  std::string_view rest(src.data() + pos, src.size() - pos);
  if (html) {
    html_escape(out, rest);
    out += "</div>\n";
  } else {
    out += rest;
    if (out.empty() || out.back() != '\n') out += '\n';
  }
  if (options.explain) {
    std::string lines;
    append_explanations(lines, doc);
    if (html) {
      out += "<pre class=\"hl-explanations\">";
      html_escape(out, lines);
      out += "</pre>\n";
    } else {
      out += lines;
    }
  }
  return out;
}

HighlightedDocument parse_highlight_json(std::string_view json) {
  ojson j;
  try {
    j = ojson::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("highlight json: ") + e.what());
  }
  try {
    HighlightedDocument doc;
    doc.doc.source = j.at("text").get<std::string>();
    doc.rate = j.at("rate").get<double>();
    for (const auto& t : j.at("tokens")) {
      auto tag = parse_tag(t.at("tag").get<std::string>());
      if (!tag) throw std::invalid_argument("unknown tag in highlight json");
      doc.doc.tokens.push_back({t.at("text").get<std::string>(), t.at("lemma").get<std::string>(),
                                *tag,
                                {t.at("start").get<std::size_t>(), t.at("end").get<std::size_t>()}});
    }
    for (const auto& c : j.at("chunks")) {
      doc.doc.chunks.push_back({c.at("first").get<std::size_t>(), c.at("last").get<std::size_t>(),
                                c.at("head").get<std::size_t>()});
    }
    for (const auto& s : j.at("spans")) {
      auto role = parse_role(s.at("role").get<std::string>());
      if (!role) throw std::invalid_argument("unknown role in highlight json");
      HighlightSpan span;
      span.first = s.at("first_token").get<std::size_t>();
      span.last = s.at("last_token").get<std::size_t>();
      if (span.first >= span.last || span.last > doc.doc.tokens.size()) {
        throw std::invalid_argument("span token range out of bounds");
      }
      span.role = *role;
      span.score = s.at("score").get<double>();
      span.explanation = explanation_from_json(s.at("detail"));
      doc.spans.push_back(std::move(span));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("highlight json: ") + e.what());
  }
}

}  // namespace slrkit
