// End-to-end evaluation: corpus in, prompts out, replies scored, records
// persisted, reports emitted.
//
// Determinism holds at the artifact boundary: with a warm cache the same
// corpus, registry and configuration produce byte-identical records and
// reports, whatever the request schedule did.
//
// Reply handling policy (the scoring side of malformed model output):
//   * reply with no parsable rows  -> no tree; UAS left empty (0/0), all
//     ADD fields absent, warnings explain each absence
//   * tree present but character streams unalignable -> every gold
//     attachment counts as incorrect (0/n), tree-level ADD still computed
//   * structural violations (duplicate index, out-of-range head, bad root
//     count) are recorded as warnings and scored, never rejected

#ifndef LCEVAL_RUNNER_HPP
#define LCEVAL_RUNNER_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "lceval/corpus.hpp"
#include "lceval/eval_record.hpp"
#include "lceval/llmclient.hpp"
#include "lceval/modelio.hpp"
#include "lceval/report.hpp"

namespace lceval::harness {

struct RunConfig {
  std::filesystem::path corpus_manifest;
  std::filesystem::path registry_path;
  std::filesystem::path lix_template_path;
  std::filesystem::path add_template_path;
  std::filesystem::path cache_dir;
  std::filesystem::path output_dir;
  std::optional<std::filesystem::path> replies_dir;  // recorded replies
  bool offline = false;
  deptree::AddConvention convention = deptree::AddConvention::root_zero;
  int concurrency = 2;
  uint64_t seed = 0;  // recorded in run metadata; drives corpus sampling
  textmetrics::LixOptions lix_options;
  double align_edit_budget = 0.10;
};

/// Reads a JSON run configuration; relative paths resolve against the
/// config file's directory.
RunConfig load_run_config(const std::filesystem::path& file);

struct RunResult {
  std::vector<EvalRecord> records;
  std::filesystem::path records_path;
  ReportBundle reports;
};

/// Per-item failures become record warnings; only corpus/config/registry
/// load errors are fatal.
RunResult run_evaluation(const RunConfig& config);

/// Scores one reply pair against one corpus item (the `align` CLI path and
/// the per-item core of run_evaluation).
EvalRecord score_item(const CorpusItem& item, const std::string& model_id,
                      const std::optional<std::string>& lix_reply,
                      const std::optional<std::string>& add_reply,
                      const RunConfig& config);

}  // namespace lceval::harness

#endif  // LCEVAL_RUNNER_HPP
