// Dependency tree representation, CoNLL-U ingestion and average dependency
// distance (ADD).

#ifndef LCEVAL_DEPTREE_HPP
#define LCEVAL_DEPTREE_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace lceval::deptree {

inline constexpr std::array<std::string_view, 17> kUdPosTags = {
    "ADJ",  "ADP",   "ADV",  "AUX",   "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART", "PRON",  "PROPN", "PUNCT", "SCONJ", "SYM",  "VERB", "X"};

struct DepNode {
  int index = 0;      // 1-based
  std::string form;
  int head = 0;       // 0 = attached to the virtual root
  std::string pos;    // UD tag; empty on predicted nodes
};

/// Validated single-rooted acyclic tree with contiguous 1..n indices.
struct GoldTree {
  std::vector<DepNode> nodes;
  std::string sentence_id;

  int root_index() const;  // index of the node with head == 0
};

enum class ViolationKind { MultipleRoots, NoRoot, HeadOutOfRange, DuplicatedIndex };

const char* to_string(ViolationKind kind);

struct StructuralViolation {
  ViolationKind kind;
  int node_index;       // stated index of the offending node (0 for NoRoot)
  std::string detail;
};

/// Model output kept verbatim; structural defects are recorded, never
/// rejected, so degraded trees still get scored.
struct PredictedTree {
  std::vector<DepNode> nodes;
  std::vector<StructuralViolation> violations;
};

/// Builds a PredictedTree, filling the violations list exhaustively for the
/// four defect classes.
PredictedTree make_predicted(std::vector<DepNode> nodes);

enum class AddConvention { root_zero, root_index };

struct AddResult {
  long sum_distance = 0;
  long word_count = 0;
  double add = 0.0;     // sum_distance / word_count
  AddConvention convention = AddConvention::root_zero;
};

/// Distance of a non-root node is |index - head|. The root contributes 0
/// under root_zero, or its own index under root_index (distance to a
/// virtual root at position 0). The denominator counts every node.
AddResult compute_add(const GoldTree& tree, AddConvention convention);

/// As above; heads outside [0, n] are excluded from the sum but their nodes
/// still count toward the denominator.
AddResult compute_add(const PredictedTree& tree, AddConvention convention);

/// Parses CoNLL-U text (10 tab-separated columns, blank-line sentence
/// separation, '#' comments). Multiword-token ranges ("1-2") and empty
/// nodes ("1.1") are skipped. ID, FORM, UPOS and HEAD populate DepNode.
/// Throws Error(MalformedLine) and Error(NonTree) with 1-based line numbers.
std::vector<GoldTree> parse_conllu(std::string_view text);

/// Writes the four populated columns back out; the other six are '_'.
std::string serialize_conllu(const GoldTree& tree);

std::vector<std::string> forms_of(const std::vector<DepNode>& nodes);

}  // namespace lceval::deptree

#endif  // LCEVAL_DEPTREE_HPP
