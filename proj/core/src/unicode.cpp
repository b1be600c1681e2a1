#include "lceval/unicode.hpp"

#include <unordered_map>

namespace lceval::uni {

Decoded decode_one(std::string_view text, std::size_t pos) {
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  if (pos >= n) return {kReplacement, 1};
  unsigned char b0 = s[pos];
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t i) {
    return i < n && (s[i] & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
    char32_t cp = ((b0 & 0x1Fu) << 6) | (s[pos + 1] & 0x3Fu);
    if (cp >= 0x80) return {cp, 2};
  } else if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
    char32_t cp = ((b0 & 0x0Fu) << 12) | ((s[pos + 1] & 0x3Fu) << 6) |
                  (s[pos + 2] & 0x3Fu);
    if (cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF)) return {cp, 3};
  } else if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) &&
             cont(pos + 3)) {
    char32_t cp = ((b0 & 0x07u) << 18) | ((s[pos + 1] & 0x3Fu) << 12) |
                  ((s[pos + 2] & 0x3Fu) << 6) | (s[pos + 3] & 0x3Fu);
    if (cp >= 0x10000 && cp <= 0x10FFFF) return {cp, 4};
  }
  return {kReplacement, 1};
}

std::u32string to_u32(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    auto [cp, w] = decode_one(utf8, i);
    out.push_back(cp);
    i += static_cast<std::size_t>(w);
  }
  return out;
}

std::string to_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

bool is_letter(char32_t cp) {
  if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return true;
  if (cp < 0x80) return false;
  if (cp == 0x00AA || cp == 0x00B5 || cp == 0x00BA) return true;
  if (cp >= 0x00C0 && cp <= 0x00D6) return true;   // À..Ö
  if (cp >= 0x00D8 && cp <= 0x00F6) return true;   // Ø..ö
  if (cp >= 0x00F8 && cp <= 0x02AF) return true;   // ø.. + Latin Ext-A/B, IPA
  if (cp >= 0x0386 && cp <= 0x03FF && cp != 0x0387) return true;  // Greek
  if (cp >= 0x0400 && cp <= 0x04FF) return true;   // Cyrillic
  if (cp >= 0x1E00 && cp <= 0x1EFF) return true;   // Latin Ext Additional
  return false;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_upper(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0x00C0 && cp <= 0x00D6) return true;
  if (cp >= 0x00D8 && cp <= 0x00DE) return true;
  // Latin Extended-A alternates case by code point parity in three runs.
  if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2) == 0;
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2) == 1;
  if (cp >= 0x014A && cp <= 0x0177) return (cp % 2) == 0;
  if (cp == 0x0178 || cp == 0x0179 || cp == 0x017B || cp == 0x017D) return true;
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return true;  // Greek
  if (cp >= 0x0400 && cp <= 0x042F) return true;                  // Cyrillic
  return false;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::size_t letter_count(std::string_view utf8) {
  std::size_t count = 0, i = 0;
  while (i < utf8.size()) {
    auto [cp, w] = decode_one(utf8, i);
    if (is_letter(cp)) ++count;
    i += static_cast<std::size_t>(w);
  }
  return count;
}

std::size_t cp_count(std::string_view utf8) {
  std::size_t count = 0, i = 0;
  while (i < utf8.size()) {
    auto [cp, w] = decode_one(utf8, i);
    (void)cp;
    ++count;
    i += static_cast<std::size_t>(w);
  }
  return count;
}

namespace {

// (base << 8 | mark offset from 0x300) -> precomposed code point.
const std::unordered_map<uint32_t, char32_t>& composition_table() {
  static const auto* table = [] {
    auto* m = new std::unordered_map<uint32_t, char32_t>;
    auto put = [&](char32_t base, char32_t mark, char32_t composed) {
      (*m)[(static_cast<uint32_t>(base) << 8) | (mark - 0x300)] = composed;
    };
    const char32_t G = 0x300, A = 0x301, C = 0x302, T = 0x303, D = 0x308,
                   R = 0x30A, H = 0x30C, Z = 0x327;
    // grave
    put('A', G, 0xC0); put('E', G, 0xC8); put('I', G, 0xCC);
    put('O', G, 0xD2); put('U', G, 0xD9);
    put('a', G, 0xE0); put('e', G, 0xE8); put('i', G, 0xEC);
    put('o', G, 0xF2); put('u', G, 0xF9);
    // acute
    put('A', A, 0xC1); put('E', A, 0xC9); put('I', A, 0xCD);
    put('O', A, 0xD3); put('U', A, 0xDA); put('Y', A, 0xDD);
    put('a', A, 0xE1); put('e', A, 0xE9); put('i', A, 0xED);
    put('o', A, 0xF3); put('u', A, 0xFA); put('y', A, 0xFD);
    put('C', A, 0x106); put('c', A, 0x107); put('N', A, 0x143);
    put('n', A, 0x144); put('S', A, 0x15A); put('s', A, 0x15B);
    put('Z', A, 0x179); put('z', A, 0x17A);
    // circumflex
    put('A', C, 0xC2); put('E', C, 0xCA); put('I', C, 0xCE);
    put('O', C, 0xD4); put('U', C, 0xDB);
    put('a', C, 0xE2); put('e', C, 0xEA); put('i', C, 0xEE);
    put('o', C, 0xF4); put('u', C, 0xFB);
    // tilde
    put('A', T, 0xC3); put('N', T, 0xD1); put('O', T, 0xD5);
    put('a', T, 0xE3); put('n', T, 0xF1); put('o', T, 0xF5);
    // diaeresis
    put('A', D, 0xC4); put('E', D, 0xCB); put('I', D, 0xCF);
    put('O', D, 0xD6); put('U', D, 0xDC);
    put('a', D, 0xE4); put('e', D, 0xEB); put('i', D, 0xEF);
    put('o', D, 0xF6); put('u', D, 0xFC); put('y', D, 0xFF);
    put('Y', D, 0x178);
    // ring above
    put('A', R, 0xC5); put('a', R, 0xE5); put('U', R, 0x16E);
    put('u', R, 0x16F);
    // caron
    put('C', H, 0x10C); put('c', H, 0x10D); put('S', H, 0x160);
    put('s', H, 0x161); put('Z', H, 0x17D); put('z', H, 0x17E);
    // cedilla
    put('C', Z, 0xC7); put('c', Z, 0xE7);
    return m;
  }();
  return *table;
}

}  // namespace

std::u32string compose_latin(std::u32string_view cps) {
  const auto& table = composition_table();
  std::u32string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp >= 0x300 && cp <= 0x327 && !out.empty()) {
      auto it = table.find((static_cast<uint32_t>(out.back()) << 8) |
                           (cp - 0x300));
      if (it != table.end()) {
        out.back() = it->second;
        continue;
      }
    }
    out.push_back(cp);
  }
  return out;
}

}  // namespace lceval::uni
