// Per-model error aggregation over evaluation records.

#ifndef LCEVAL_MODEL_METRICS_HPP
#define LCEVAL_MODEL_METRICS_HPP

#include <optional>
#include <span>
#include <string>

#include "lceval/eval_record.hpp"
#include "lceval/stats.hpp"

namespace lceval::stats {

struct ModelMetrics {
  std::string model_id;
  long record_count = 0;
  // each metric is absent when no pair survives pairwise deletion
  std::optional<MaeResult> lix_error;   // |true LIX - reported LIX|
  std::optional<MaeResult> add_diff_1;  // |gold-tree ADD - model-tree ADD|
  std::optional<MaeResult> add_diff_2;  // |model-tree ADD - reported ADD|
};

/// Records must all belong to one model (asserted by model_id).
ModelMetrics aggregate_model_metrics(
    std::span<const harness::EvalRecord> records);

}  // namespace lceval::stats

#endif  // LCEVAL_MODEL_METRICS_HPP
