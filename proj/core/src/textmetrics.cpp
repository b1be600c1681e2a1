#include "lceval/textmetrics.hpp"

#include <algorithm>
#include <optional>

#include "lceval/errors.hpp"
#include "lceval/unicode.hpp"

namespace lceval::textmetrics {

namespace {

bool is_joiner(char32_t cp) {
  return cp == '-' || cp == '\'' || cp == 0x2019;
}

bool is_closer(char32_t cp) {
  switch (cp) {
    case '"': case '\'': case ')': case ']': case '}':
    case 0x201D: case 0x2019: case 0x00BB:
      return true;
    default:
      return false;
  }
}

// Decoded view of the text: code points plus their byte offsets. offsets
// has one extra entry holding text.size() so offsets[i+1] is always valid.
struct CpText {
  std::u32string cps;
  std::vector<std::size_t> offsets;
};

CpText decode(std::string_view text) {
  CpText out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto [cp, w] = uni::decode_one(text, i);
    out.cps.push_back(cp);
    out.offsets.push_back(i);
    i += static_cast<std::size_t>(w);
  }
  out.offsets.push_back(text.size());
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  CpText t = decode(text);
  const std::size_t n = t.cps.size();
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < n) {
    char32_t cp = t.cps[i];
    if (uni::is_space(cp)) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    if (uni::is_alnum(cp)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (uni::is_alnum(t.cps[j])) {
          ++j;
        } else if (is_joiner(t.cps[j]) && j + 1 < n &&
                   uni::is_alnum(t.cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      i = j;
    } else {
      i = begin + 1;
    }
    Token tok;
    tok.ordinal = static_cast<int>(tokens.size()) + 1;
    tok.begin = t.offsets[begin];
    tok.end = t.offsets[i];
    tok.form = std::string(text.substr(tok.begin, tok.end - tok.begin));
    for (std::size_t k = begin; k < i; ++k) {
      char32_t c = t.cps[k];
      ++tok.cp_count;
      if (uni::is_letter(c)) {
        ++tok.letter_count;
        tok.is_word = true;
      } else if (uni::is_digit(c)) {
        tok.has_digit = true;
      }
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::vector<SentenceSpan> segment_sentences(std::string_view text,
                                            const LixOptions& options) {
  CpText t = decode(text);
  const std::size_t n = t.cps.size();
  std::vector<SentenceSpan> spans;
  std::optional<std::size_t> start;  // cp index of first non-space in sentence

  auto is_terminal = [](char32_t cp) {
    return cp == '.' || cp == '!' || cp == '?';
  };

  std::size_t i = 0;
  while (i < n) {
    char32_t cp = t.cps[i];
    if (!start) {
      if (uni::is_space(cp)) {
        ++i;
        continue;
      }
      start = i;
    }
    if (is_terminal(cp)) {
      std::size_t j = i;
      while (j + 1 < n && is_terminal(t.cps[j + 1])) ++j;
      bool dots_only = true;
      for (std::size_t k = i; k <= j; ++k) {
        if (t.cps[k] != '.') dots_only = false;
      }
      const bool ellipsis = dots_only && j > i;

      bool abbreviation = false;
      if (i == j && cp == '.' && !options.abbreviations.empty()) {
        std::size_t k = i;
        while (k > 0 && uni::is_letter(t.cps[k - 1])) --k;
        if (k < i) {
          std::u32string word(t.cps.begin() + static_cast<long>(k),
                              t.cps.begin() + static_cast<long>(i));
          abbreviation = options.abbreviations.count(uni::to_utf8(word)) > 0;
        }
      }

      if (!ellipsis && !abbreviation) {
        std::size_t k = j + 1;
        while (k < n && is_closer(t.cps[k])) ++k;
        const bool at_end = k >= n;
        const bool boundary =
            at_end || uni::is_space(t.cps[k]) || uni::is_upper(t.cps[k]);
        if (boundary) {
          spans.push_back({t.offsets[*start], t.offsets[k]});
          start.reset();
          i = k;
          continue;
        }
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  if (start) {
    std::size_t end = n;
    while (end > *start && uni::is_space(t.cps[end - 1])) --end;
    spans.push_back({t.offsets[*start], t.offsets[end]});
  }
  return spans;
}

LixBreakdown compute_lix(std::string_view text, const LixOptions& options) {
  const std::vector<Token> tokens = tokenize(text);
  LixBreakdown out;
  for (const Token& tok : tokens) {
    const bool counts =
        tok.is_word || (options.numerals_are_words && tok.has_digit);
    if (!counts) continue;
    ++out.word_count_a;
    if (!tok.is_word) continue;  // pure numerals are never long words
    if (tok.letter_count > options.long_word_threshold)
      ++out.long_words_by_letters;
    if (tok.cp_count > options.long_word_threshold) ++out.long_words_by_chars;
  }
  if (out.word_count_a == 0)
    throw Error(ErrorKind::NoWords, "text contains no word tokens");
  out.sentence_count_b = std::max<long>(
      1, static_cast<long>(segment_sentences(text, options).size()));
  out.long_word_count_c = options.count_mode == LixOptions::CountMode::letters
                              ? out.long_words_by_letters
                              : out.long_words_by_chars;
  out.score = static_cast<double>(out.word_count_a) /
                  static_cast<double>(out.sentence_count_b) +
              100.0 * static_cast<double>(out.long_word_count_c) /
                  static_cast<double>(out.word_count_a);
  return out;
}

LixBand classify_lix(double score) {
  if (score < 30.0) return LixBand::very_easy_to_easy;
  if (score <= 50.0) return LixBand::medium;
  if (score <= 60.0) return LixBand::advanced;
  return LixBand::very_advanced;
}

const char* to_string(LixBand band) {
  switch (band) {
    case LixBand::very_easy_to_easy: return "very_easy_to_easy";
    case LixBand::medium: return "medium";
    case LixBand::advanced: return "advanced";
    case LixBand::very_advanced: return "very_advanced";
  }
  return "?";
}

}  // namespace lceval::textmetrics
