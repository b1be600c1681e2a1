#include "lceval/uas.hpp"

#include <unordered_map>

#include "lceval/errors.hpp"

namespace lceval::deptree {

UasResult compute_uas(const GoldTree& gold, const PredictedTree& pred,
                      const AlignmentMap& map) {
  // Alignment pairs carry token POSITIONS. For gold trees position and
  // index coincide (1..n contiguity); predicted rows are resolved by
  // position, and head values are compared in the model's own index space.
  std::unordered_map<int, int> gold_to_pred_pos;
  for (const AlignedPair& p : map.pairs)
    gold_to_pred_pos.emplace(p.gold_index, p.pred_index);

  auto pred_at = [&](int pos) -> const DepNode* {
    if (pos < 1 || pos > static_cast<int>(pred.nodes.size())) return nullptr;
    return &pred.nodes[static_cast<std::size_t>(pos) - 1];
  };

  UasResult r;
  for (const DepNode& g : gold.nodes) {
    const std::string& tag = g.pos.empty() ? "_" : g.pos;
    auto& bucket = r.per_pos[tag];
    ++bucket.second;
    ++r.total;

    auto it = gold_to_pred_pos.find(g.index);
    if (it == gold_to_pred_pos.end()) continue;  // dropped by the model
    const DepNode* p = pred_at(it->second);
    if (p == nullptr) continue;

    bool correct = false;
    if (g.head == 0) {
      correct = p->head == 0;
    } else {
      auto head_it = gold_to_pred_pos.find(g.head);
      if (head_it != gold_to_pred_pos.end()) {
        const DepNode* ph = pred_at(head_it->second);
        correct = ph != nullptr && p->head == ph->index && p != ph;
      }
    }
    if (correct) {
      ++bucket.first;
      ++r.correct;
    }
  }
  return r;
}

UasAggregate aggregate_uas(const std::vector<UasResult>& results) {
  if (results.empty())
    throw Error(ErrorKind::InsufficientData, "no UAS results to aggregate");
  UasAggregate agg;
  long correct = 0, total = 0;
  for (const UasResult& r : results) {
    correct += r.correct;
    total += r.total;
    for (const auto& [tag, ct] : r.per_pos) {
      auto& bucket = agg.per_pos[tag];
      bucket.first += ct.first;
      bucket.second += ct.second;
    }
  }
  agg.micro = total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
  double sum = 0.0;
  long classes = 0;
  for (const auto& [tag, ct] : agg.per_pos) {
    if (ct.second <= 0) continue;
    sum += static_cast<double>(ct.first) / static_cast<double>(ct.second);
    ++classes;
  }
  agg.macro = classes > 0 ? sum / static_cast<double>(classes) : 0.0;
  return agg;
}

}  // namespace lceval::deptree
