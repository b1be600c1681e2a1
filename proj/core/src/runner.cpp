#include "lceval/runner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lceval/alignment.hpp"
#include "lceval/errors.hpp"
#include "lceval/sha256.hpp"

namespace lceval::harness {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

deptree::AddConvention convention_from(const std::string& s) {
  if (s == "root_zero") return deptree::AddConvention::root_zero;
  if (s == "root_index") return deptree::AddConvention::root_index;
  throw Error(ErrorKind::ConfigError, "unknown convention '" + s + "'");
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& file) {
  json doc;
  try {
    doc = json::parse(read_file(file));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError,
                "config " + file.string() + ": " + e.what());
  }
  const std::filesystem::path base =
      std::filesystem::absolute(file).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };

  RunConfig cfg;
  cfg.corpus_manifest = resolve(doc.at("corpus").get<std::string>());
  cfg.registry_path = resolve(doc.at("registry").get<std::string>());
  cfg.lix_template_path =
      resolve(doc.at("templates").at("lix").get<std::string>());
  cfg.add_template_path =
      resolve(doc.at("templates").at("add").get<std::string>());
  cfg.cache_dir = resolve(doc.value("cache_dir", "cache"));
  cfg.output_dir = resolve(doc.value("output_dir", "out"));
  if (doc.contains("replies_dir"))
    cfg.replies_dir = resolve(doc.at("replies_dir").get<std::string>());
  cfg.offline = doc.value("offline", false);
  cfg.convention = convention_from(doc.value("convention", "root_zero"));
  cfg.concurrency = doc.value("concurrency", 2);
  cfg.seed = doc.value("seed", 0ull);
  cfg.align_edit_budget = doc.value("align_edit_budget", 0.10);
  if (doc.contains("lix")) {
    const json& lx = doc.at("lix");
    cfg.lix_options.numerals_are_words = lx.value("numerals_are_words", true);
    cfg.lix_options.long_word_threshold = lx.value("long_word_threshold", 6);
    const std::string mode = lx.value("count_mode", "letters");
    if (mode == "chars")
      cfg.lix_options.count_mode = textmetrics::LixOptions::CountMode::chars;
    else if (mode != "letters")
      throw Error(ErrorKind::ConfigError, "unknown count_mode '" + mode + "'");
    for (const json& a : lx.value("abbreviations", json::array()))
      cfg.lix_options.abbreviations.insert(a.get<std::string>());
  }
  return cfg;
}

EvalRecord score_item(const CorpusItem& item, const std::string& model_id,
                      const std::optional<std::string>& lix_reply,
                      const std::optional<std::string>& add_reply,
                      const RunConfig& config) {
  EvalRecord rec;
  rec.item_id = item.item_id;
  rec.model_id = model_id;
  rec.true_lix = item.true_lix.score;
  rec.gold_add = deptree::compute_add(item.gold_tree, config.convention).add;

  // ---- LIX side ----
  if (lix_reply) {
    modelio::ParsedLixResponse lix = modelio::parse_lix_response(*lix_reply);
    rec.reported_lix = lix.reported_lix;
    if (lix.extraction == modelio::ParsedLixResponse::Extraction::none)
      rec.warnings.push_back("lix: no numeric score found in reply");
    else if (lix.extraction ==
             modelio::ParsedLixResponse::Extraction::fallback_last_number)
      rec.warnings.push_back("lix: no LIX= marker, used last number in reply");
  } else {
    rec.warnings.push_back("lix: no reply available");
  }

  // ---- dependency side ----
  if (!add_reply) {
    rec.warnings.push_back("dep: no reply available");
    return rec;
  }
  std::optional<modelio::ParsedDepResponse> parsed =
      modelio::parse_dependency_response(
          *add_reply, static_cast<int>(item.gold_tree.nodes.size()));
  if (!parsed) {
    rec.warnings.push_back(
        "dep: no parsable rows in reply (refusal or paraphrase)");
    return rec;
  }
  for (const modelio::ParseWarning& w : parsed->warnings) {
    rec.warnings.push_back(
        w.line > 0 ? "dep: line " + std::to_string(w.line) + ": " + w.message
                   : "dep: " + w.message);
  }
  rec.model_tree_add = deptree::compute_add(parsed->tree, config.convention).add;
  rec.reported_add = parsed->reported_add;
  if (!rec.reported_add)
    rec.warnings.push_back("dep: no trailing average in reply");

  try {
    deptree::AlignmentMap map = deptree::align_tokens(
        deptree::forms_of(item.gold_tree.nodes),
        deptree::forms_of(parsed->tree.nodes), {config.align_edit_budget});
    rec.uas = deptree::compute_uas(item.gold_tree, parsed->tree, map);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Unalignable) throw;
    rec.warnings.push_back(std::string("align: ") + e.what());
    // paraphrased rather than parsed: every gold attachment is wrong
    for (const deptree::DepNode& g : item.gold_tree.nodes) {
      ++rec.uas.total;
      ++rec.uas.per_pos[g.pos.empty() ? "_" : g.pos].second;
    }
  }
  return rec;
}

namespace {

void import_recorded_replies(const RunConfig& config,
                             const std::vector<CorpusItem>& corpus,
                             const std::vector<llm::ModelRecord>& registry,
                             const modelio::PromptTemplate& lix_tmpl,
                             const modelio::PromptTemplate& add_tmpl,
                             llm::CompletionCache& cache) {
  for (const llm::ModelRecord& model : registry) {
    for (const CorpusItem& item : corpus) {
      struct TaskFile {
        const modelio::PromptTemplate* tmpl;
        const std::string* stimulus;
        const char* suffix;
      };
      const TaskFile tasks[] = {{&lix_tmpl, &item.paragraph, "lix"},
                                {&add_tmpl, &item.sentence, "add"}};
      for (const TaskFile& task : tasks) {
        std::filesystem::path file = *config.replies_dir / model.model_id /
                                     (item.item_id + "." + task.suffix + ".txt");
        if (!std::filesystem::exists(file)) continue;
        const std::string prompt =
            modelio::render_prompt(*task.tmpl, *task.stimulus);
        const std::string key = llm::cache_key(model, prompt);
        if (!cache.find(key))
          cache.store({key, read_file(file), "imported", "recorded"});
      }
    }
  }
}

}  // namespace

RunResult run_evaluation(const RunConfig& config) {
  std::vector<CorpusItem> corpus =
      load_corpus(config.corpus_manifest, config.lix_options);
  std::vector<llm::ModelRecord> registry =
      llm::load_registry(config.registry_path);
  modelio::PromptTemplate lix_tmpl =
      modelio::load_template(modelio::PromptTask::lix, config.lix_template_path);
  modelio::PromptTemplate add_tmpl =
      modelio::load_template(modelio::PromptTask::add, config.add_template_path);

  auto cache = std::make_shared<llm::CompletionCache>(config.cache_dir);
  if (config.replies_dir)
    import_recorded_replies(config, corpus, registry, lix_tmpl, add_tmpl,
                            *cache);
  llm::Client client(cache, llm::make_http_transport(), {}, config.offline);

  std::filesystem::create_directories(config.output_dir);
  std::filesystem::path raw_dir = config.output_dir / "raw";
  std::filesystem::create_directories(raw_dir);

  RunResult result;
  for (llm::ModelRecord model : registry) {
    model.max_in_flight = std::max(1, config.concurrency);

    std::vector<std::string> prompts;
    prompts.reserve(corpus.size() * 2);
    for (const CorpusItem& item : corpus)
      prompts.push_back(modelio::render_prompt(lix_tmpl, item.paragraph));
    for (const CorpusItem& item : corpus)
      prompts.push_back(modelio::render_prompt(add_tmpl, item.sentence));
    std::vector<llm::Client::Outcome> outcomes =
        client.complete_batch(model, prompts);

    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const llm::Client::Outcome& lix_out = outcomes[i];
      const llm::Client::Outcome& add_out = outcomes[corpus.size() + i];
      EvalRecord rec;
      try {
        rec = score_item(corpus[i], model.model_id, lix_out.reply,
                         add_out.reply, config);
      } catch (const std::exception& e) {
        // a failed item never aborts the run
        rec = EvalRecord{};
        rec.item_id = corpus[i].item_id;
        rec.model_id = model.model_id;
        rec.true_lix = corpus[i].true_lix.score;
        rec.gold_add =
            deptree::compute_add(corpus[i].gold_tree, config.convention).add;
        rec.warnings.push_back(std::string("item: scoring failed: ") +
                               e.what());
      }
      if (!lix_out.error.empty())
        rec.warnings.push_back("llm(lix): " + lix_out.error);
      if (!add_out.error.empty())
        rec.warnings.push_back("llm(add): " + add_out.error);
      auto persist = [&](const char* task, const std::string& reply) {
        const std::string hash = sha256_hex(reply);
        std::filesystem::path file = raw_dir / (hash + ".txt");
        if (!std::filesystem::exists(file)) {
          std::ofstream out(file, std::ios::binary);
          out << reply;
        }
        rec.raw_reply_refs[task] = hash;
      };
      if (lix_out.reply) persist("lix", *lix_out.reply);
      if (add_out.reply) persist("add", *add_out.reply);
      result.records.push_back(std::move(rec));
    }
  }

  result.records_path = config.output_dir / "records.jsonl";
  {
    std::ofstream out(result.records_path, std::ios::binary);
    if (!out)
      throw Error(ErrorKind::IoError,
                  "cannot write " + result.records_path.string());
    out << to_jsonl(result.records);
  }
  result.reports =
      emit_reports(result.records, registry, corpus, config.output_dir);
  return result;
}

}  // namespace lceval::harness
