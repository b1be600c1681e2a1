#include "lceval/modelio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lceval/errors.hpp"

namespace lceval::modelio {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool parse_int_field(std::string_view s, int& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

struct Line {
  int number;  // 1-based in the raw reply
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view raw) {
  std::vector<Line> lines;
  int no = 0;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    std::string_view line = eol == std::string_view::npos
                                ? raw.substr(pos)
                                : raw.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({++no, line});
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

bool is_fence(std::string_view line) {
  return trim(line).substr(0, 3) == "```";
}

// `int, word, int, int` with a greedy middle: the word keeps any commas of
// its own as long as the first field and the last two are integers.
bool parse_row(std::string_view line, int& index, std::string& word, int& head,
               int& distance) {
  std::size_t c1 = line.find(',');
  if (c1 == std::string_view::npos) return false;
  if (!parse_int_field(line.substr(0, c1), index)) return false;
  std::size_t c3 = line.rfind(',');
  if (c3 == std::string_view::npos || c3 <= c1) return false;
  std::size_t c2 = line.rfind(',', c3 - 1);
  if (c2 == std::string_view::npos || c2 <= c1) return false;
  if (!parse_int_field(line.substr(c2 + 1, c3 - c2 - 1), head)) return false;
  if (!parse_int_field(line.substr(c3 + 1), distance)) return false;
  word = std::string(trim(line.substr(c1 + 1, c2 - c1 - 1)));
  return true;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum_byte(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         static_cast<unsigned char>(c) >= 0x80;
}

// Standalone numbers: digits with an optional sign and one decimal
// separator ('.' or Swedish ','), not glued to letters ("B2" is not a
// number, "12/7" yields 12 and 7).
std::vector<double> scan_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_digit(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    bool negative = false;
    if (start > 0 && (text[start - 1] == '-' || text[start - 1] == '+')) {
      if (start < 2 || !is_alnum_byte(text[start - 2])) {
        negative = text[start - 1] == '-';
      }
    }
    if (start > 0 && is_alnum_byte(text[start - 1])) {  // glued to a word
      while (i < n && (is_digit(text[i]) || text[i] == '.' || text[i] == ','))
        ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && is_digit(text[j])) ++j;
    std::string digits(text.substr(i, j - i));
    if (j + 1 < n && (text[j] == '.' || text[j] == ',') && is_digit(text[j + 1])) {
      std::size_t k = j + 1;
      while (k < n && is_digit(text[k])) ++k;
      digits += '.';
      digits += std::string(text.substr(j + 1, k - j - 1));
      j = k;
    }
    if (j < n && is_alnum_byte(text[j]) &&
        !std::isdigit(static_cast<unsigned char>(text[j]))) {
      i = j;  // glued to a following word ("24h"): not standalone
      continue;
    }
    out.push_back((negative ? -1.0 : 1.0) * std::strtod(digits.c_str(), nullptr));
    i = j;
  }
  return out;
}

}  // namespace

PromptTemplate make_template(PromptTask task, std::string body) {
  std::size_t first = body.find(kPlaceholder);
  if (first == std::string::npos)
    throw Error(ErrorKind::TemplateInvalid,
                "template body lacks the " + std::string(kPlaceholder) +
                    " placeholder");
  if (body.find(kPlaceholder, first + 1) != std::string::npos)
    throw Error(ErrorKind::TemplateInvalid,
                "template body contains the placeholder more than once");
  return {task, std::move(body)};
}

PromptTemplate load_template(PromptTask task,
                             const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::IoError, "cannot read template " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return make_template(task, ss.str());
}

std::string render_prompt(const PromptTemplate& tmpl,
                          std::string_view stimulus) {
  if (stimulus.empty())
    throw Error(ErrorKind::EmptyStimulus, "stimulus text is empty");
  std::string out = tmpl.body;
  out.replace(out.find(kPlaceholder), kPlaceholder.size(), stimulus);
  return out;
}

std::optional<ParsedDepResponse> parse_dependency_response(
    std::string_view raw, std::optional<int> expected_token_hint) {
  ParsedDepResponse resp;
  std::vector<deptree::DepNode> nodes;
  std::size_t last_row_end = 0;  // byte offset just past the last row line

  std::size_t offset = 0;
  for (const Line& line : split_lines(raw)) {
    const std::size_t line_begin = offset;
    offset += line.text.size() + 1;
    if (is_fence(line.text)) continue;
    int index = 0, head = 0, distance = 0;
    std::string word;
    if (!parse_row(line.text, index, word, head, distance)) continue;
    deptree::DepNode node;
    node.index = index;
    node.form = word;
    node.head = head;
    if (word.empty())
      resp.warnings.push_back({line.number, "row has an empty word field"});
    const int computed =
        head == 0 ? 0 : std::abs(index - head);
    if (distance != computed)
      resp.warnings.push_back(
          {line.number, "stated distance " + std::to_string(distance) +
                            " differs from |index-head| = " +
                            std::to_string(computed)});
    nodes.push_back(std::move(node));
    last_row_end = std::min(line_begin + line.text.size(), raw.size());
  }
  if (nodes.empty()) return std::nullopt;

  if (expected_token_hint && *expected_token_hint != static_cast<int>(nodes.size()))
    resp.warnings.push_back(
        {0, "reply has " + std::to_string(nodes.size()) + " rows, expected " +
                std::to_string(*expected_token_hint)});

  std::vector<double> trailing = scan_numbers(raw.substr(last_row_end));
  if (!trailing.empty()) resp.reported_add = trailing.back();

  resp.tree = deptree::make_predicted(std::move(nodes));
  for (const auto& v : resp.tree.violations)
    resp.warnings.push_back(
        {0, std::string(deptree::to_string(v.kind)) + ": " + v.detail});
  return resp;
}

ParsedLixResponse parse_lix_response(std::string_view raw) {
  ParsedLixResponse resp;
  // last "LIX=" marker that is actually followed by a number
  std::size_t search_pos = raw.size();
  for (;;) {
    std::size_t at = raw.rfind("LIX", search_pos);
    if (at == std::string_view::npos) break;
    std::size_t i = at + 3;
    while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
    bool has_eq = i < raw.size() && raw[i] == '=';
    if (has_eq) {
      ++i;
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      std::size_t j = i;
      if (j < raw.size() && (raw[j] == '-' || raw[j] == '+')) ++j;
      std::size_t digits_begin = j;
      while (j < raw.size() && is_digit(raw[j])) ++j;
      if (j > digits_begin) {
        std::string num(raw.substr(i, j - i));
        if (j + 1 < raw.size() && (raw[j] == '.' || raw[j] == ',') &&
            is_digit(raw[j + 1])) {
          std::size_t k = j + 1;
          while (k < raw.size() && is_digit(raw[k])) ++k;
          num += '.';
          num += std::string(raw.substr(j + 1, k - j - 1));
        }
        resp.reported_lix = std::strtod(num.c_str(), nullptr);
        resp.extraction = ParsedLixResponse::Extraction::marker;
        return resp;
      }
    }
    if (at == 0) break;
    search_pos = at - 1;
  }
  std::vector<double> numbers = scan_numbers(raw);
  if (!numbers.empty()) {
    resp.reported_lix = numbers.back();
    resp.extraction = ParsedLixResponse::Extraction::fallback_last_number;
  }
  return resp;
}

}  // namespace lceval::modelio
