// Unlabeled attachment scoring against gold trees, with a per-POS
// breakdown bucketed by the gold node's tag.

#ifndef LCEVAL_UAS_HPP
#define LCEVAL_UAS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lceval/alignment.hpp"
#include "lceval/deptree.hpp"

namespace lceval::deptree {

struct UasResult {
  long correct = 0;
  long total = 0;
  std::map<std::string, std::pair<long, long>> per_pos;  // tag -> (correct, total)

  double rate() const {
    return total > 0 ? static_cast<double>(correct) / static_cast<double>(total)
                     : 0.0;
  }
};

/// A gold node's attachment counts as correct iff it is aligned to a
/// predicted node p and either (a) it is the gold root and p has head 0, or
/// (b) its gold head is aligned to some p' and p's head is exactly p'.
/// Unaligned gold nodes count as incorrect; total = number of gold nodes.
UasResult compute_uas(const GoldTree& gold, const PredictedTree& pred,
                      const AlignmentMap& map);

struct UasAggregate {
  double micro = 0.0;  // sum(correct) / sum(total)
  double macro = 0.0;  // unweighted mean of per-POS rates with total > 0
  std::map<std::string, std::pair<long, long>> per_pos;
};

UasAggregate aggregate_uas(const std::vector<UasResult>& results);

}  // namespace lceval::deptree

#endif  // LCEVAL_UAS_HPP
