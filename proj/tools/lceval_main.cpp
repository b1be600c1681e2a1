// lceval: language-complexity evaluation harness CLI.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "lceval/alignment.hpp"
#include "lceval/corpus.hpp"
#include "lceval/deptree.hpp"
#include "lceval/errors.hpp"
#include "lceval/eval_record.hpp"
#include "lceval/llmclient.hpp"
#include "lceval/modelio.hpp"
#include "lceval/report.hpp"
#include "lceval/runner.hpp"
#include "lceval/textmetrics.hpp"
#include "lceval/uas.hpp"

using namespace lceval;
using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

textmetrics::LixOptions lix_options_from(const std::string& count_mode,
                                         bool no_numeral_words,
                                         const std::vector<std::string>& abbrevs) {
  textmetrics::LixOptions opt;
  if (count_mode == "chars")
    opt.count_mode = textmetrics::LixOptions::CountMode::chars;
  else if (count_mode != "letters")
    throw Error(ErrorKind::ConfigError, "count-mode must be letters or chars");
  opt.numerals_are_words = !no_numeral_words;
  opt.abbreviations.insert(abbrevs.begin(), abbrevs.end());
  return opt;
}

int cmd_lix(const std::string& file, bool as_json,
            const textmetrics::LixOptions& opt) {
  const std::string text = read_file(file);
  textmetrics::LixBreakdown b = textmetrics::compute_lix(text, opt);
  const char* band = textmetrics::to_string(textmetrics::classify_lix(b.score));
  if (as_json) {
    json out = {{"A", b.word_count_a},
                {"B", b.sentence_count_b},
                {"C", b.long_word_count_c},
                {"score", b.score},
                {"band", band},
                {"long_words_by_letters", b.long_words_by_letters},
                {"long_words_by_chars", b.long_words_by_chars}};
    std::cout << out.dump(2) << "\n";
  } else {
    fmt::print("A (words):              {}\n", b.word_count_a);
    fmt::print("B (sentences):          {}\n", b.sentence_count_b);
    fmt::print("C (long words):         {}\n", b.long_word_count_c);
    fmt::print("LIX:                    {:.3f}\n", b.score);
    fmt::print("band:                   {}\n", band);
    fmt::print("long words by letters:  {}\n", b.long_words_by_letters);
    fmt::print("long words by chars:    {}\n", b.long_words_by_chars);
  }
  return 0;
}

int cmd_add(const std::string& file, const std::string& convention,
            bool as_json) {
  const deptree::AddConvention conv = convention == "root_index"
                                          ? deptree::AddConvention::root_index
                                          : deptree::AddConvention::root_zero;
  std::vector<deptree::GoldTree> trees = deptree::parse_conllu(read_file(file));
  json rows = json::array();
  double sum = 0.0;
  for (const deptree::GoldTree& t : trees) {
    deptree::AddResult r = deptree::compute_add(t, conv);
    sum += r.add;
    if (as_json) {
      rows.push_back({{"sentence_id", t.sentence_id},
                      {"tokens", r.word_count},
                      {"sum_distance", r.sum_distance},
                      {"add", r.add}});
    } else {
      const char* note =
          (r.add < 1.8 || r.add > 3.6) ? "  (outside typical 1.8-3.6)" : "";
      fmt::print("{:<12} tokens={:<4} sum={:<5} ADD={:.4f}{}\n", t.sentence_id,
                 r.word_count, r.sum_distance, r.add, note);
    }
  }
  const double mean = sum / static_cast<double>(trees.size());
  if (as_json) {
    std::cout << json{{"convention", convention},
                      {"sentences", rows},
                      {"mean_add", mean}}
                     .dump(2)
              << "\n";
  } else {
    fmt::print("mean ADD over {} sentence(s): {:.4f}  [{}]\n", trees.size(),
               mean, convention);
  }
  return 0;
}

int cmd_align(const std::string& gold_file, const std::string& reply_file,
              const std::string& convention, double edit_budget, bool as_json) {
  std::vector<deptree::GoldTree> trees =
      deptree::parse_conllu(read_file(gold_file));
  if (trees.size() != 1)
    throw Error(ErrorKind::ConfigError,
                "expected exactly one gold tree, found " +
                    std::to_string(trees.size()));
  const deptree::GoldTree& gold = trees.front();

  const std::string raw = read_file(reply_file);
  auto parsed = modelio::parse_dependency_response(
      raw, static_cast<int>(gold.nodes.size()));
  if (!parsed) {
    std::cerr << "no parsable dependency rows in " << reply_file << "\n";
    return 1;
  }
  const deptree::AddConvention conv = convention == "root_index"
                                          ? deptree::AddConvention::root_index
                                          : deptree::AddConvention::root_zero;
  deptree::AlignmentMap map =
      deptree::align_tokens(deptree::forms_of(gold.nodes),
                            deptree::forms_of(parsed->tree.nodes),
                            {edit_budget});
  deptree::UasResult uas = deptree::compute_uas(gold, parsed->tree, map);
  const double gold_add = deptree::compute_add(gold, conv).add;
  const double pred_add = deptree::compute_add(parsed->tree, conv).add;

  if (as_json) {
    json pairs = json::array();
    for (const auto& p : map.pairs)
      pairs.push_back({{"gold", p.gold_index},
                       {"pred", p.pred_index},
                       {"kind", deptree::to_string(p.kind)}});
    json out = {{"pairs", pairs},
                {"unmatched_gold", map.unmatched_gold},
                {"unmatched_pred", map.unmatched_pred},
                {"uas", {{"correct", uas.correct}, {"total", uas.total}}},
                {"gold_add", gold_add},
                {"model_tree_add", pred_add}};
    if (parsed->reported_add) out["reported_add"] = *parsed->reported_add;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  for (const auto& p : map.pairs) {
    const deptree::DepNode& g =
        gold.nodes[static_cast<std::size_t>(p.gold_index) - 1];
    const deptree::DepNode& m =
        parsed->tree.nodes[static_cast<std::size_t>(p.pred_index) - 1];
    fmt::print("{:>3} {:<16} <-> {:>3} {:<16} [{}]\n", p.gold_index, g.form,
               p.pred_index, m.form, deptree::to_string(p.kind));
  }
  for (int g : map.unmatched_gold)
    fmt::print("{:>3} {:<16} <-> (unmatched)\n", g,
               gold.nodes[static_cast<std::size_t>(g) - 1].form);
  for (int p : map.unmatched_pred)
    fmt::print("    (unmatched)      <-> {:>3} {}\n", p,
               parsed->tree.nodes[static_cast<std::size_t>(p) - 1].form);
  fmt::print("UAS: {}/{} = {:.4f}\n", uas.correct, uas.total, uas.rate());
  fmt::print("gold ADD:        {:.4f}  [{}]\n", gold_add, convention);
  fmt::print("model tree ADD:  {:.4f}\n", pred_add);
  if (parsed->reported_add)
    fmt::print("model reported:  {:.4f}\n", *parsed->reported_add);
  for (const auto& w : parsed->warnings)
    fmt::print("warning: {}\n", w.message);
  return 0;
}

int cmd_run(const std::string& config_file, std::optional<uint64_t> seed,
            std::optional<std::string> cache_dir,
            std::optional<std::string> registry,
            std::optional<std::string> out_dir,
            std::optional<std::string> convention, bool offline) {
  harness::RunConfig cfg = harness::load_run_config(config_file);
  if (seed) cfg.seed = *seed;
  if (cache_dir) cfg.cache_dir = *cache_dir;
  if (registry) cfg.registry_path = *registry;
  if (out_dir) cfg.output_dir = *out_dir;
  if (offline) cfg.offline = true;
  if (convention)
    cfg.convention = *convention == "root_index"
                         ? deptree::AddConvention::root_index
                         : deptree::AddConvention::root_zero;

  harness::RunResult result = harness::run_evaluation(cfg);
  fmt::print("{} records -> {}\n", result.records.size(),
             result.records_path.string());
  fmt::print("report    -> {}\n", result.reports.markdown.string());
  for (const auto& f : result.reports.csv_files)
    fmt::print("csv       -> {}\n", f.string());
  long warnings = 0;
  for (const auto& r : result.records)
    warnings += static_cast<long>(r.warnings.size());
  fmt::print("warnings  :  {} across {} records\n", warnings,
             result.records.size());
  return 0;
}

int cmd_report(const std::string& records_dir,
               std::optional<std::string> registry,
               std::optional<std::string> out_dir,
               std::optional<std::string> corpus_manifest) {
  std::filesystem::path records_path(records_dir);
  if (std::filesystem::is_directory(records_path))
    records_path /= "records.jsonl";
  std::vector<harness::EvalRecord> records =
      harness::records_from_jsonl(read_file(records_path));

  std::vector<llm::ModelRecord> models;
  if (registry) models = llm::load_registry(*registry);
  std::vector<harness::CorpusItem> corpus;
  if (corpus_manifest) corpus = harness::load_corpus(*corpus_manifest);

  const std::filesystem::path out = out_dir ? std::filesystem::path(*out_dir)
                                            : records_path.parent_path();
  harness::ReportBundle bundle =
      harness::emit_reports(records, models, corpus, out);
  fmt::print("report -> {}\n", bundle.markdown.string());
  for (const auto& f : bundle.csv_files)
    fmt::print("csv    -> {}\n", f.string());
  return 0;
}

int cmd_sample(const std::string& essays_file, uint64_t seed,
               std::optional<std::string> out_file) {
  const std::filesystem::path base =
      std::filesystem::absolute(essays_file).parent_path();
  json doc = json::parse(read_file(essays_file));
  std::vector<harness::EssayInput> essays;
  for (const json& e : doc.at("essays")) {
    harness::EssayInput input;
    input.id = e.at("id").get<std::string>();
    input.level = e.at("level").get<std::string>() == "high_school"
                      ? harness::SourceLevel::high_school
                      : harness::SourceLevel::university;
    input.text = read_file(base / e.at("file").get<std::string>());
    essays.push_back(std::move(input));
  }
  std::vector<harness::CorpusDraft> drafts =
      harness::sample_corpus(essays, seed);
  json out = json::array();
  for (const harness::CorpusDraft& d : drafts) {
    out.push_back({{"id", d.item_id},
                   {"level", harness::to_string(d.level)},
                   {"paragraph", d.paragraph},
                   {"sentence", d.sentence}});
    fmt::print("{}: paragraph {} chars, sentence {} chars\n", d.item_id,
               d.paragraph.size(), d.sentence.size());
  }
  if (out_file) {
    std::ofstream f(*out_file, std::ios::binary);
    f << json{{"seed", seed}, {"drafts", out}}.dump(2) << "\n";
    fmt::print("drafts -> {}\n", *out_file);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"language-complexity evaluation harness"};
  app.require_subcommand(1);

  // lix
  std::string lix_file, count_mode = "letters";
  bool lix_json = false, no_numeral_words = false;
  std::vector<std::string> abbrevs;
  auto* lix = app.add_subcommand("lix", "LIX breakdown of a UTF-8 text file");
  lix->add_option("file", lix_file, "text file")->required();
  lix->add_flag("--json", lix_json, "JSON output");
  lix->add_option("--count-mode", count_mode, "letters|chars (default letters)");
  lix->add_flag("--no-numeral-words", no_numeral_words,
                "numerals do not count toward A");
  lix->add_option("--abbrev", abbrevs, "abbreviation stop list entries");

  // add
  std::string add_file, add_convention = "root_zero";
  bool add_json = false;
  auto* add = app.add_subcommand(
      "add", "average dependency distance of CoNLL-U sentences");
  add->add_option("conllu", add_file, "CoNLL-U file")->required();
  add->add_option("--convention", add_convention, "root_zero|root_index");
  add->add_flag("--json", add_json, "JSON output");

  // align
  std::string align_gold, align_reply, align_convention = "root_zero";
  double edit_budget = 0.10;
  bool align_json = false;
  auto* align = app.add_subcommand(
      "align", "align a model reply against a gold tree and score it");
  align->add_option("gold", align_gold, "gold CoNLL-U file")->required();
  align->add_option("reply", align_reply, "raw model reply text file")
      ->required();
  align->add_option("--convention", align_convention, "root_zero|root_index");
  align->add_option("--edit-budget", edit_budget,
                    "unalignable beyond this fraction of characters");
  align->add_flag("--json", align_json, "JSON output");

  // run
  std::string run_config;
  std::optional<uint64_t> run_seed;
  std::optional<std::string> run_cache, run_registry, run_out, run_convention;
  bool run_offline = false;
  auto* run = app.add_subcommand("run", "run the full evaluation pipeline");
  run->add_option("config", run_config, "run configuration JSON")->required();
  run->add_option("--seed", run_seed, "sampling seed override");
  run->add_option("--cache-dir", run_cache, "completion cache directory");
  run->add_option("--registry", run_registry, "model registry file");
  run->add_option("--out", run_out, "output directory");
  run->add_option("--convention", run_convention, "root_zero|root_index");
  run->add_flag("--offline", run_offline, "cache only, no network");

  // report
  std::string report_records;
  std::optional<std::string> report_registry, report_out, report_corpus;
  auto* rep =
      app.add_subcommand("report", "re-emit reports from persisted records");
  rep->add_option("records", report_records,
                  "records.jsonl or the directory holding it")
      ->required();
  rep->add_option("--registry", report_registry, "model registry file");
  rep->add_option("--out", report_out, "output directory");
  rep->add_option("--corpus", report_corpus, "corpus manifest for stats");

  // sample
  std::string sample_essays;
  uint64_t sample_seed = 0;
  std::optional<std::string> sample_out;
  auto* sample = app.add_subcommand(
      "sample", "draw one paragraph and sentence per essay, deterministically");
  sample->add_option("essays", sample_essays, "essays manifest JSON")
      ->required();
  sample->add_option("--seed", sample_seed, "sampling seed");
  sample->add_option("--out", sample_out, "write drafts JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lix->parsed())
      return cmd_lix(lix_file, lix_json,
                     lix_options_from(count_mode, no_numeral_words, abbrevs));
    if (add->parsed()) return cmd_add(add_file, add_convention, add_json);
    if (align->parsed())
      return cmd_align(align_gold, align_reply, align_convention, edit_budget,
                       align_json);
    if (run->parsed())
      return cmd_run(run_config, run_seed, run_cache, run_registry, run_out,
                     run_convention, run_offline);
    if (rep->parsed())
      return cmd_report(report_records, report_registry, report_out,
                        report_corpus);
    if (sample->parsed())
      return cmd_sample(sample_essays, sample_seed, sample_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
