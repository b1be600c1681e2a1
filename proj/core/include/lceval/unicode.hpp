// Minimal UTF-8 and character classification support.
//
// The classification tables cover the Latin repertoire (ASCII, Latin-1
// supplement, Latin Extended-A/B, Latin Extended Additional) plus Greek and
// Cyrillic. That is the character inventory of the shipped corpus and of
// realistic model output for it; no external Unicode library is pulled in.

#ifndef LCEVAL_UNICODE_HPP
#define LCEVAL_UNICODE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lceval::uni {

inline constexpr char32_t kReplacement = 0xFFFD;

/// One decoded code point: `width` is the number of bytes consumed (>= 1).
struct Decoded {
  char32_t cp;
  int width;
};

/// Decodes the code point starting at byte `pos`. Invalid sequences decode
/// to U+FFFD with width 1, so a scan always makes progress.
Decoded decode_one(std::string_view text, std::size_t pos);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view cps);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_upper(char32_t cp);
bool is_space(char32_t cp);
inline bool is_alnum(char32_t cp) { return is_letter(cp) || is_digit(cp); }

/// Number of letter code points in a UTF-8 string.
std::size_t letter_count(std::string_view utf8);
/// Number of code points in a UTF-8 string.
std::size_t cp_count(std::string_view utf8);

/// Canonical composition restricted to Latin base + combining diacritical
/// mark pairs (the precomposed Latin-1 / Extended-A targets). Sufficient to
/// normalize decomposed Swedish letters in model output; sequences outside
/// the table pass through unchanged.
std::u32string compose_latin(std::u32string_view cps);

}  // namespace lceval::uni

#endif  // LCEVAL_UNICODE_HPP
