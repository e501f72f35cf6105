#include "slrkit/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slrkit/tagging.hpp"
#include "unicode.hpp"

namespace slrkit {

namespace {

using detail::decode_utf8;
using detail::encode_utf8;

bool is_line_break(char32_t c) {
  return c == U'\n' || c == U'\r' || c == 0x85 || c == 0x2028 || c == 0x2029;
}

char32_t map_char(char32_t c) {
  switch (c) {
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:
    case 0x2212: case 0xFE58: case 0xFE63: case 0xFF0D:
      return U'-';
    case 0x2018: case 0x2019: case 0x201A: case 0x201B: case 0x2032: case 0x2035:
      return U'\'';
    case 0x201C: case 0x201D: case 0x201E: case 0x201F: case 0x2033: case 0x2036:
      return U'"';
    default:
      return c;
  }
}

bool known_word(const std::u32string& word, const Lexicon& lexicon) {
  auto lower = detail::lowercase(encode_utf8(word));
  Lemmatizer lem(lexicon);
  for (auto pos : {PartOfSpeech::Noun, PartOfSpeech::Verb, PartOfSpeech::Adjective,
                   PartOfSpeech::Adverb}) {
    if (lem.lemma(lower, pos)) return true;
  }
  return false;
}

// Joins "word-<line break>word". Other whitespace is left for the collapse step.
std::u32string join_hyphenation(const std::u32string& in, const Lexicon* lexicon) {
  std::u32string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    char32_t c = in[i];
    if (c != U'-' || i == 0 || !detail::is_word_char(in[i - 1])) {
      out += c;
      continue;
    }
    std::size_t k = i + 1;
    bool line_break = false;
    while (k < in.size() && detail::is_space_char(in[k])) line_break |= is_line_break(in[k++]);
    if (!line_break || k == in.size() || !detail::is_word_char(in[k])) {
      out += c;
      continue;
    }
    bool drop_hyphen;
    if (lexicon != nullptr) {
      std::size_t l = i;
      while (l > 0 && detail::is_word_char(in[l - 1])) --l;
      std::size_t r = k;
      while (r < in.size() && detail::is_word_char(in[r])) ++r;
      auto joined = in.substr(l, i - l) + in.substr(k, r - k);
      drop_hyphen = known_word(joined, *lexicon);
    } else {
      drop_hyphen = detail::is_lower_char(in[i - 1]) && detail::is_lower_char(in[k]);
    }
    if (!drop_hyphen) out += U'-';
    i = k - 1;
  }
  return out;
}

std::u32string fold(std::u32string s) {
  for (auto& c : s) c = detail::fold_char(c);
  return s;
}

// Largest distance that still scores above `score` for a window of at most
// `length` code points against a quote of `m`; -1 when nothing can.
long max_useful_distance(int score, std::size_t m, std::size_t length) {
  std::size_t longer = std::max(m, length);
  for (long d = static_cast<long>(longer); d >= 0; --d) {
    if (ratio_from_distance(static_cast<std::size_t>(d), longer) > score) return d;
  }
  return -1;
}

}  // namespace

std::string normalize(std::string_view text, const Lexicon* lexicon) {
  auto u = decode_utf8(detail::nfkc(text));
  std::u32string mapped;
  mapped.reserve(u.size());
  for (char32_t c : u) {
    if (c == 0xAD) continue;
    mapped += map_char(c);
  }
  auto joined = join_hyphenation(mapped, lexicon);
  std::u32string out;
  out.reserve(joined.size());
  bool pending_space = false;
  for (char32_t c : joined) {
    if (detail::is_space_char(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += U' ';
    pending_space = false;
    out += c;
  }
  return encode_utf8(out);
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(decode_utf8(a), decode_utf8(b));
}

int ratio_from_distance(std::size_t distance, std::size_t longer_length) {
  if (longer_length == 0) return 100;
  double r = 100.0 * (1.0 - static_cast<double>(distance) / static_cast<double>(longer_length));
  return static_cast<int>(std::lround(r));
}

int ratio(std::string_view a, std::string_view b, bool case_fold) {
  auto ua = decode_utf8(a);
  auto ub = decode_utf8(b);
  if (case_fold) {
    ua = fold(std::move(ua));
    ub = fold(std::move(ub));
  }
  return ratio_from_distance(levenshtein(ua, ub), std::max(ua.size(), ub.size()));
}

std::string_view to_string(Verdict v) { return v == Verdict::Pass ? "pass" : "flagged"; }

std::string_view to_string(MatchScope s) { return s == MatchScope::Slice ? "slice" : "document"; }

MatchResult best_match(std::string_view quote, std::string_view document,
                       const MatchOptions& options) {
  auto q = decode_utf8(quote);
  auto d = decode_utf8(document);
  if (q.empty()) throw std::invalid_argument("empty quote");
  const auto doc_text = d;
  if (options.case_fold) {
    q = fold(std::move(q));
    d = fold(std::move(d));
  }
  const std::size_t m = q.size();
  const std::size_t n = d.size();
  const std::size_t lo = (4 * m + 4) / 5;  // ceil(0.8 m)
  const std::size_t hi = 6 * m / 5;

  MatchResult best;
  best.score = -1;
  auto beats = [&](int score, std::size_t start) {
    return score > best.score || (score == best.score && start < best.start);
  };

  if (n < lo) {
    best.score = ratio_from_distance(levenshtein(q, d), std::max(m, n));
    best.end = n;
  } else {
    // Tokens are split at spaces and between word and punctuation characters.
    std::vector<bool> word(n);
    for (std::size_t i = 0; i < n; ++i) word[i] = detail::is_word_char(d[i]);
    auto is_start = [&](std::size_t i) {
      return d[i] != U' ' && (i == 0 || d[i - 1] == U' ' || word[i] != word[i - 1]);
    };
    auto is_end = [&](std::size_t j) {
      return d[j - 1] != U' ' && (j == n || d[j] == U' ' || word[j] != word[j - 1]);
    };

    // floor[s]: least distance between the quote and any substring starting
    // at s (semi-global alignment over the reversed strings).
    std::vector<std::size_t> floor_at(n + 1, m);
    {
      std::vector<std::size_t> col(m + 1);
      for (std::size_t i = 0; i <= m; ++i) col[i] = i;
      for (std::size_t j = n; j-- > 0;) {
        std::size_t diag = 0;
        col[0] = 0;
        for (std::size_t i = 1; i <= m; ++i) {
          std::size_t left = col[i];
          col[i] = std::min({left + 1, col[i - 1] + 1, diag + (q[m - i] == d[j] ? 0 : 1)});
          diag = left;
        }
        floor_at[j] = col[m];
      }
    }

    struct Start {
      std::size_t pos;
      std::size_t limit;     // longest window length to scan
      std::size_t fallback;  // 0, or the single window length to use
      int bound;
    };
    std::vector<Start> starts;
    for (std::size_t s = 0; s < n; ++s) {
      if (!is_start(s)) continue;
      std::size_t limit = std::min(n - s, hi);
      bool any_in_range = false;
      for (std::size_t len = lo; len <= limit && !any_in_range; ++len) {
        any_in_range = is_end(s + len);
      }
      std::size_t fallback = 0;
      if (!any_in_range) {
        // Nearest token end when none falls in range.
        std::size_t before = 0;
        for (std::size_t len = std::min(lo, n - s); len > 0 && before == 0; --len) {
          if (is_end(s + len)) before = len;
        }
        std::size_t after = 0;
        for (std::size_t len = hi + 1; len <= n - s && after == 0; ++len) {
          if (is_end(s + len)) after = len;
        }
        fallback = (before == 0 || (after != 0 && after - m < m - before)) ? after : before;
        if (fallback == 0) continue;
        limit = std::max(limit, fallback);
      }
      starts.push_back({s, limit, fallback, ratio_from_distance(floor_at[s], std::max(m, limit))});
    }
    std::stable_sort(starts.begin(), starts.end(),
                     [](const Start& a, const Start& b) { return a.bound > b.bound; });

    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (const auto& st : starts) {
      if (!beats(st.bound, st.pos)) {
        if (st.bound < best.score) break;
        continue;
      }
      const std::size_t s = st.pos;
      long useful = max_useful_distance(best.score - (s < best.start ? 1 : 0), m, st.limit);
      for (std::size_t i = 0; i <= m; ++i) prev[i] = i;
      for (std::size_t len = 1; len <= st.limit; ++len) {
        const char32_t c = d[s + len - 1];
        cur[0] = len;
        std::size_t row_min = cur[0];
        for (std::size_t i = 1; i <= m; ++i) {
          cur[i] = std::min({prev[i] + 1, cur[i - 1] + 1, prev[i - 1] + (q[i - 1] == c ? 0 : 1)});
          row_min = std::min(row_min, cur[i]);
        }
        std::swap(prev, cur);
        if (static_cast<long>(row_min) > useful) break;
        bool candidate = st.fallback != 0 ? len == st.fallback
                                          : (len >= lo && is_end(s + len));
        if (!candidate) continue;
        int score = ratio_from_distance(prev[m], std::max(m, len));
        if (beats(score, s) && !(best.start == s && best.score == score)) {
          best.score = score;
          best.start = s;
          best.end = s + len;
          useful = max_useful_distance(best.score, m, st.limit);
        }
      }
    }
    if (best.score < 0) {
      best.score = ratio_from_distance(levenshtein(q, d), std::max(m, n));
      best.start = 0;
      best.end = n;
    }
  }

  best.matched_text =
      encode_utf8(std::u32string_view(doc_text).substr(best.start, best.end - best.start));
  best.normalized_quote = std::string(quote);
  best.verdict = best.score >= options.threshold ? Verdict::Pass : Verdict::Flagged;
  return best;
}

EvidenceAudit verify_evidence(const EvidenceRecord& record, std::string_view document,
                              const VerifyOptions& options) {
  if (record.quotes.empty()) {
    throw std::invalid_argument("record " + record.id() + " has no quotes");
  }
  EvidenceAudit audit;
  audit.record_id = record.id();

  const std::string whole = normalize(document, options.lexicon);
  std::string slice;
  if (record.source_slice) {
    auto start = std::min(record.source_slice->start, document.size());
    auto end = std::clamp(record.source_slice->end, start, document.size());
    // Snap to code point boundaries.
    auto continuation = [&](std::size_t i) {
      return i < document.size() && (static_cast<unsigned char>(document[i]) & 0xC0) == 0x80;
    };
    while (start > 0 && continuation(start)) --start;
    while (continuation(end)) ++end;
    slice = normalize(document.substr(start, end - start), options.lexicon);
  }

  double total = 0.0;
  for (const auto& raw : record.quotes) {
    auto quote = normalize(raw, options.lexicon);
    if (quote.empty()) {
      throw std::invalid_argument("record " + record.id() + " has an empty quote");
    }
    QuoteCheck check{raw, {}, MatchScope::Document};
    if (record.source_slice && !slice.empty()) {
      check.match = best_match(quote, slice, options.match);
      check.scope = MatchScope::Slice;
      if (check.match.score < 100) {
        auto wide = best_match(quote, whole, options.match);
        if (wide.score > check.match.score) {
          check.match = std::move(wide);
          check.scope = MatchScope::Document;
        }
      }
    } else {
      check.match = best_match(quote, whole, options.match);
    }
    total += check.match.score;
    audit.quotes.push_back(std::move(check));
  }
  audit.mean_score = total / static_cast<double>(audit.quotes.size());
  audit.flagged = audit.mean_score < options.match.threshold;
  return audit;
}

}  // namespace slrkit
