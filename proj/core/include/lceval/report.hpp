// Report emission: model summary (MMLU, LIX error), dependency-distance
// table, per-POS UAS grid with micro/macro rows, and a correlation section.
// Markdown and CSV variants carry identical numbers: table cells at 2
// decimals, r and p at 3.

#ifndef LCEVAL_REPORT_HPP
#define LCEVAL_REPORT_HPP

#include <filesystem>
#include <span>
#include <vector>

#include "lceval/corpus.hpp"
#include "lceval/eval_record.hpp"
#include "lceval/llmclient.hpp"

namespace lceval::harness {

struct ReportBundle {
  std::filesystem::path markdown;
  std::vector<std::filesystem::path> csv_files;
};

/// `corpus` may be empty; the corpus-statistics section is skipped then.
/// Models appear in registry order; models present only in the records are
/// appended. Registry/record asymmetry is tolerated in both directions.
ReportBundle emit_reports(std::span<const EvalRecord> records,
                          std::span<const llm::ModelRecord> registry,
                          std::span<const CorpusItem> corpus,
                          const std::filesystem::path& out_dir);

}  // namespace lceval::harness

#endif  // LCEVAL_REPORT_HPP
