// Prompt rendering and strict-but-forgiving parsing of model replies.
//
// Dependency replies are scanned line by line for rows of the shape
// `int, word, int, int`; everything else is prose and ignored. Parsing
// never throws on arbitrary text: a reply with no parsable row yields
// nullopt (a refusal or paraphrase), anything else yields a tree plus
// warnings. Extracted numbers accept a Swedish decimal comma.

#ifndef LCEVAL_MODELIO_HPP
#define LCEVAL_MODELIO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lceval/deptree.hpp"

namespace lceval::modelio {

inline constexpr std::string_view kPlaceholder = "{{TEXT}}";

enum class PromptTask { lix, add };

struct PromptTemplate {
  PromptTask task = PromptTask::lix;
  std::string body;  // contains the placeholder exactly once
};

/// Throws Error(TemplateInvalid) unless the body contains {{TEXT}} exactly
/// once.
PromptTemplate make_template(PromptTask task, std::string body);
PromptTemplate load_template(PromptTask task, const std::filesystem::path& file);

/// Substitutes the placeholder; no other mutation. Throws
/// Error(EmptyStimulus) for an empty stimulus.
std::string render_prompt(const PromptTemplate& tmpl, std::string_view stimulus);

struct ParseWarning {
  int line = 0;  // 1-based line in the raw reply, 0 when not line-bound
  std::string message;
};

struct ParsedDepResponse {
  deptree::PredictedTree tree;
  std::optional<double> reported_add;  // trailing average, if the model gave one
  std::vector<ParseWarning> warnings;
};

/// nullopt means no line of the reply parses as a row (refusal/paraphrase).
std::optional<ParsedDepResponse> parse_dependency_response(
    std::string_view raw, std::optional<int> expected_token_hint = {});

struct ParsedLixResponse {
  std::optional<double> reported_lix;
  enum class Extraction { marker, fallback_last_number, none };
  Extraction extraction = Extraction::none;
};

/// First choice: the number after the last "LIX=" marker (spaces around '='
/// tolerated). Fallback: the last standalone number in the reply. Absence
/// is data, not failure.
ParsedLixResponse parse_lix_response(std::string_view raw);

}  // namespace lceval::modelio

#endif  // LCEVAL_MODELIO_HPP
