// Tokenization, sentence segmentation and LIX readability scoring.
//
// Rules (mirrored by the reference oracle in tests/oracle/lix_oracle.py):
//
// Tokens
//   * a word token is a maximal run of letter/digit code points; a single
//     '-' or apostrophe BETWEEN two such code points is absorbed into the
//     token ("2-åring" is one token)
//   * every other non-whitespace code point is a single-character
//     punctuation token
//   * is_word means the form contains at least one letter
//
// Sentences
//   * '.', '!' and '?' are terminals; a run of two or more dots (or U+2026)
//     is an ellipsis and never ends a sentence
//   * a terminal ends the sentence when, after skipping closing quotes and
//     brackets, the next code point is whitespace, end of text, or an
//     uppercase letter (informal essays join sentences without a space)
//   * a '.' directly after a token in the abbreviation stop list does not
//     end the sentence; the default stop list is empty
//   * colon, semicolon and single ellipsis characters never end sentences
//
// LIX = A/B + 100*C/A where
//   A = word tokens; tokens made of digits only ("24", "1945") count toward
//       A by default but can never be long words
//   B = sentence count (at least 1)
//   C = words with more than `long_word_threshold` letters; counting mode
//       `chars` measures code points instead of letters

#ifndef LCEVAL_TEXTMETRICS_HPP
#define LCEVAL_TEXTMETRICS_HPP

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lceval::textmetrics {

struct Token {
  int ordinal = 0;          // 1-based position in the text
  std::string form;
  std::size_t begin = 0;    // byte offsets into the source, half-open
  std::size_t end = 0;
  bool is_word = false;     // contains at least one letter
  bool has_digit = false;
  int letter_count = 0;
  int cp_count = 0;
};

struct SentenceSpan {
  std::size_t begin = 0;    // byte offsets, half-open
  std::size_t end = 0;
};

struct LixOptions {
  bool numerals_are_words = true;
  int long_word_threshold = 6;
  enum class CountMode { letters, chars };
  CountMode count_mode = CountMode::letters;
  std::set<std::string> abbreviations;
};

struct LixBreakdown {
  long word_count_a = 0;
  long sentence_count_b = 0;
  long long_word_count_c = 0;
  double score = 0.0;
  // diagnostics: C under both counting conventions
  long long_words_by_letters = 0;
  long long_words_by_chars = 0;
};

enum class LixBand { very_easy_to_easy, medium, advanced, very_advanced };

std::vector<Token> tokenize(std::string_view text);

std::vector<SentenceSpan> segment_sentences(std::string_view text,
                                            const LixOptions& options = {});

/// Throws Error(NoWords) when the text has no tokens counting toward A.
LixBreakdown compute_lix(std::string_view text, const LixOptions& options = {});

/// Band boundaries: < 30 easy, [30, 50] medium, (50, 60] advanced, > 60
/// very advanced.
LixBand classify_lix(double score);

const char* to_string(LixBand band);

}  // namespace lceval::textmetrics

#endif  // LCEVAL_TEXTMETRICS_HPP
