// One (model, item) evaluation outcome. Absent optional fields are always
// explained by an entry in `warnings`.

#ifndef LCEVAL_EVAL_RECORD_HPP
#define LCEVAL_EVAL_RECORD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lceval/uas.hpp"

namespace lceval::harness {

struct EvalRecord {
  std::string item_id;
  std::string model_id;
  double true_lix = 0.0;
  std::optional<double> reported_lix;
  double gold_add = 0.0;
  std::optional<double> model_tree_add;
  std::optional<double> reported_add;
  deptree::UasResult uas;  // total == 0 when the reply had no usable tree
  std::map<std::string, std::string> raw_reply_refs;  // task -> content hash
  std::vector<std::string> warnings;
};

nlohmann::json to_json(const EvalRecord& record);
EvalRecord eval_record_from_json(const nlohmann::json& j);

/// One canonical JSON object per line.
std::string to_jsonl(const std::vector<EvalRecord>& records);
std::vector<EvalRecord> records_from_jsonl(std::string_view text);

}  // namespace lceval::harness

#endif  // LCEVAL_EVAL_RECORD_HPP
