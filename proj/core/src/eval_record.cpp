#include "lceval/eval_record.hpp"

#include <sstream>

#include "lceval/errors.hpp"

namespace lceval::harness {

using nlohmann::json;

namespace {

json opt_to_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> opt_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

json to_json(const EvalRecord& r) {
  json per_pos = json::object();
  for (const auto& [tag, ct] : r.uas.per_pos)
    per_pos[tag] = json::array({ct.first, ct.second});
  return json{{"item_id", r.item_id},
              {"model_id", r.model_id},
              {"true_lix", r.true_lix},
              {"reported_lix", opt_to_json(r.reported_lix)},
              {"gold_add", r.gold_add},
              {"model_tree_add", opt_to_json(r.model_tree_add)},
              {"reported_add", opt_to_json(r.reported_add)},
              {"uas", json{{"correct", r.uas.correct},
                           {"total", r.uas.total},
                           {"per_pos", per_pos}}},
              {"raw_reply_refs", r.raw_reply_refs},
              {"warnings", r.warnings}};
}

EvalRecord eval_record_from_json(const json& j) {
  EvalRecord r;
  r.item_id = j.at("item_id").get<std::string>();
  r.model_id = j.at("model_id").get<std::string>();
  r.true_lix = j.at("true_lix").get<double>();
  r.reported_lix = opt_from_json(j.at("reported_lix"));
  r.gold_add = j.at("gold_add").get<double>();
  r.model_tree_add = opt_from_json(j.at("model_tree_add"));
  r.reported_add = opt_from_json(j.at("reported_add"));
  const json& u = j.at("uas");
  r.uas.correct = u.at("correct").get<long>();
  r.uas.total = u.at("total").get<long>();
  for (const auto& [tag, ct] : u.at("per_pos").items())
    r.uas.per_pos[tag] = {ct.at(0).get<long>(), ct.at(1).get<long>()};
  r.raw_reply_refs =
      j.at("raw_reply_refs").get<std::map<std::string, std::string>>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string to_jsonl(const std::vector<EvalRecord>& records) {
  std::ostringstream os;
  for (const EvalRecord& r : records) os << to_json(r).dump() << '\n';
  return os.str();
}

std::vector<EvalRecord> records_from_jsonl(std::string_view text) {
  std::vector<EvalRecord> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = eol == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    ++line_no;
    if (!line.empty()) {
      try {
        out.push_back(eval_record_from_json(json::parse(line)));
      } catch (const json::exception& e) {
        throw Error(ErrorKind::IoError,
                    std::string("bad record: ") + e.what(), line_no);
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

}  // namespace lceval::harness
