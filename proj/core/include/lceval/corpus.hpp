// Corpus ingestion and seeded sampling.
//
// Sampling is deterministic across platforms: each essay draws from its own
// mt19937_64 engine seeded with `seed ^ fnv1a64(essay id)`, and selections
// use plain modulo reduction (the bias at 64 bits is far below anything a
// uniformity test can see).

#ifndef LCEVAL_CORPUS_HPP
#define LCEVAL_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lceval/deptree.hpp"
#include "lceval/textmetrics.hpp"

namespace lceval::harness {

enum class SourceLevel { university, high_school };

const char* to_string(SourceLevel level);

struct CorpusItem {
  std::string item_id;
  SourceLevel source_level = SourceLevel::university;
  std::string paragraph;  // LIX stimulus
  std::string sentence;   // parsing stimulus
  deptree::GoldTree gold_tree;
  textmetrics::LixBreakdown true_lix;
};

/// Loads a manifest (JSON: items with id, level, paragraph/sentence/gold
/// paths relative to the manifest) and computes ground truth. Validates
/// that gold tree forms concatenate to the sentence's non-whitespace
/// content; any load failure is fatal.
std::vector<CorpusItem> load_corpus(const std::filesystem::path& manifest,
                                    const textmetrics::LixOptions& lix_options = {});

struct EssayInput {
  std::string id;
  SourceLevel level = SourceLevel::university;
  std::string text;
};

struct CorpusDraft {
  std::string item_id;
  SourceLevel level = SourceLevel::university;
  std::string paragraph;
  std::string sentence;
};

/// Picks one paragraph (blank-line separated; a text without blank lines is
/// one paragraph) and one sentence per essay, uniformly. Deterministic for
/// a fixed seed. Throws Error(EmptyEssay) for an essay with no content.
std::vector<CorpusDraft> sample_corpus(std::span<const EssayInput> essays,
                                       uint64_t seed);

struct CorpusStats {
  double paragraph_token_mean = 0.0;
  double paragraph_token_sd = 0.0;
  double sentence_token_mean = 0.0;
  double sentence_token_sd = 0.0;
  long n = 0;
};

/// Sample standard deviation; throws Error(InsufficientItems) for n < 2.
CorpusStats corpus_stats(std::span<const CorpusItem> items);

uint64_t fnv1a64(std::string_view s);

}  // namespace lceval::harness

#endif  // LCEVAL_CORPUS_HPP
