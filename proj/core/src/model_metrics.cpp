#include "lceval/model_metrics.hpp"

#include <vector>

#include "lceval/errors.hpp"

namespace lceval::stats {

ModelMetrics aggregate_model_metrics(
    std::span<const harness::EvalRecord> records) {
  if (records.empty())
    throw Error(ErrorKind::InsufficientData, "no records for model");
  ModelMetrics m;
  m.model_id = records.front().model_id;
  m.record_count = static_cast<long>(records.size());

  std::vector<std::optional<double>> true_lix, reported_lix;
  std::vector<std::optional<double>> gold_add, tree_add, reported_add;
  for (const harness::EvalRecord& r : records) {
    if (r.model_id != m.model_id)
      throw Error(ErrorKind::InsufficientData,
                  "records mix models " + m.model_id + " and " + r.model_id);
    true_lix.emplace_back(r.true_lix);
    reported_lix.push_back(r.reported_lix);
    gold_add.emplace_back(r.gold_add);
    tree_add.push_back(r.model_tree_add);
    reported_add.push_back(r.reported_add);
  }

  auto try_mae = [](const std::vector<std::optional<double>>& a,
                    const std::vector<std::optional<double>>& b)
      -> std::optional<MaeResult> {
    try {
      return mean_abs_error(std::span(a), std::span(b));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoPairs) return std::nullopt;
      throw;
    }
  };
  m.lix_error = try_mae(true_lix, reported_lix);
  m.add_diff_1 = try_mae(gold_add, tree_add);
  m.add_diff_2 = try_mae(tree_add, reported_add);
  return m;
}

}  // namespace lceval::stats
