#include "lceval/corpus.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lceval/errors.hpp"
#include "lceval/unicode.hpp"

namespace lceval::harness {

using nlohmann::json;

const char* to_string(SourceLevel level) {
  return level == SourceLevel::university ? "university" : "high_school";
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceLevel level_from(const std::string& s) {
  if (s == "university") return SourceLevel::university;
  if (s == "high_school") return SourceLevel::high_school;
  throw Error(ErrorKind::ConfigError, "unknown source level '" + s + "'");
}

std::string strip_whitespace(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto [cp, w] = uni::decode_one(text, i);
    if (!uni::is_space(cp))
      out.append(text.substr(i, static_cast<std::size_t>(w)));
    i += static_cast<std::size_t>(w);
  }
  return out;
}

}  // namespace

std::vector<CorpusItem> load_corpus(const std::filesystem::path& manifest,
                                    const textmetrics::LixOptions& lix_options) {
  json doc;
  try {
    doc = json::parse(read_file(manifest));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError,
                "manifest " + manifest.string() + ": " + e.what());
  }
  const std::filesystem::path base = manifest.parent_path();
  std::vector<CorpusItem> items;
  for (const json& it : doc.at("items")) {
    CorpusItem item;
    item.item_id = it.at("id").get<std::string>();
    item.source_level = level_from(it.at("level").get<std::string>());
    item.paragraph = read_file(base / it.at("paragraph").get<std::string>());
    item.sentence = read_file(base / it.at("sentence").get<std::string>());
    while (!item.sentence.empty() &&
           (item.sentence.back() == '\n' || item.sentence.back() == '\r'))
      item.sentence.pop_back();

    std::vector<deptree::GoldTree> trees =
        deptree::parse_conllu(read_file(base / it.at("gold").get<std::string>()));
    if (trees.size() != 1)
      throw Error(ErrorKind::ConfigError,
                  item.item_id + ": expected exactly one gold tree, got " +
                      std::to_string(trees.size()));
    item.gold_tree = std::move(trees.front());

    std::string tree_chars;
    for (const deptree::DepNode& n : item.gold_tree.nodes)
      tree_chars += strip_whitespace(n.form);
    if (tree_chars != strip_whitespace(item.sentence))
      throw Error(ErrorKind::ConfigError,
                  item.item_id +
                      ": gold tree forms do not concatenate to the sentence");

    item.true_lix = textmetrics::compute_lix(item.paragraph, lix_options);
    items.push_back(std::move(item));
  }
  if (items.empty())
    throw Error(ErrorKind::ConfigError, "manifest lists no items");
  return items;
}

namespace {

std::vector<std::string> split_paragraphs(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::size_t pos = 0;
  auto flush = [&] {
    // drop pure-whitespace paragraphs
    for (char c : cur)
      if (!std::isspace(static_cast<unsigned char>(c))) {
        out.push_back(cur);
        break;
      }
    cur.clear();
  };
  int newline_run = 0;
  while (pos < text.size()) {
    char c = text[pos++];
    if (c == '\n') {
      ++newline_run;
      if (newline_run >= 2) {
        flush();
        continue;
      }
    } else if (c != '\r') {
      newline_run = 0;
    }
    cur.push_back(c);
  }
  flush();
  return out;
}

std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::vector<CorpusDraft> sample_corpus(std::span<const EssayInput> essays,
                                       uint64_t seed) {
  std::vector<CorpusDraft> drafts;
  for (const EssayInput& essay : essays) {
    std::vector<std::string> paragraphs = split_paragraphs(essay.text);
    std::vector<textmetrics::SentenceSpan> sentence_spans =
        textmetrics::segment_sentences(essay.text);
    if (paragraphs.empty() || sentence_spans.empty())
      throw Error(ErrorKind::EmptyEssay,
                  "essay " + essay.id + " has no usable content");

    std::mt19937_64 rng(seed ^ fnv1a64(essay.id));
    const auto pick = [&rng](std::size_t n) {
      return static_cast<std::size_t>(rng() % n);
    };
    CorpusDraft d;
    d.item_id = essay.id;
    d.level = essay.level;
    d.paragraph = trim_copy(paragraphs[pick(paragraphs.size())]);
    const textmetrics::SentenceSpan span =
        sentence_spans[pick(sentence_spans.size())];
    d.sentence = trim_copy(
        std::string_view(essay.text).substr(span.begin, span.end - span.begin));
    drafts.push_back(std::move(d));
  }
  return drafts;
}

CorpusStats corpus_stats(std::span<const CorpusItem> items) {
  if (items.size() < 2)
    throw Error(ErrorKind::InsufficientItems,
                "need at least 2 items, got " + std::to_string(items.size()));
  CorpusStats st;
  st.n = static_cast<long>(items.size());
  std::vector<double> para_counts, sent_counts;
  for (const CorpusItem& it : items) {
    para_counts.push_back(
        static_cast<double>(textmetrics::tokenize(it.paragraph).size()));
    sent_counts.push_back(
        static_cast<double>(textmetrics::tokenize(it.sentence).size()));
  }
  auto mean_sd = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair(mean, std::sqrt(ss / static_cast<double>(v.size() - 1)));
  };
  std::tie(st.paragraph_token_mean, st.paragraph_token_sd) = mean_sd(para_counts);
  std::tie(st.sentence_token_mean, st.sentence_token_sd) = mean_sd(sent_counts);
  return st;
}

}  // namespace lceval::harness
