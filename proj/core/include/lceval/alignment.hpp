// Tokenization-robust alignment between gold and predicted token sequences.
//
// Forms are composed (Latin NFC subset) and stripped of whitespace, then
// each token is assigned the code-point span it occupies in the
// concatenation of its own sequence. When the two character streams differ
// (dropped punctuation, typo-level edits) the predicted spans are projected
// into gold coordinates along a minimal edit script before overlap
// matching; streams that differ beyond the edit budget throw
// Error(Unalignable), which signals a paraphrase rather than a parse.

#ifndef LCEVAL_ALIGNMENT_HPP
#define LCEVAL_ALIGNMENT_HPP

#include <optional>
#include <string>
#include <vector>

namespace lceval::deptree {

enum class PairKind { exact, split, merge };

const char* to_string(PairKind kind);

struct AlignedPair {
  int gold_index;   // 1-based
  int pred_index;   // 1-based
  PairKind kind;
};

struct AlignmentMap {
  std::vector<AlignedPair> pairs;     // monotone, at most one per gold index
  std::vector<int> unmatched_gold;
  std::vector<int> unmatched_pred;

  std::optional<int> pred_for_gold(int gold_index) const;
};

struct AlignOptions {
  double edit_budget_fraction = 0.10;
};

/// Matching rules: identical spans pair as `exact`; a gold span holding
/// several predicted spans pairs with the one of maximal overlap (`split`,
/// the rest go to unmatched_pred); a predicted span covering several gold
/// spans pairs with each of them (`merge`).
AlignmentMap align_tokens(const std::vector<std::string>& gold_forms,
                          const std::vector<std::string>& pred_forms,
                          const AlignOptions& options = {});

}  // namespace lceval::deptree

#endif  // LCEVAL_ALIGNMENT_HPP
