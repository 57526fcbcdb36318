#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hotline/domain.hpp"
#include "hotline/llm/gateway.hpp"
#include "hotline/prompts.hpp"

namespace hotline {

/// One labeled exemplar for few-shot prompting.
struct Exemplar {
  std::string summary;
  bool positive = false;  // confirmed suicidal behavior in follow-up
  int score = 0;          // 0..16

  bool operator==(const Exemplar&) const = default;
};

struct ExemplarSet {
  std::vector<Exemplar> exemplars;

  int positive_count() const;
  int negative_count() const;
};

/// Built-in set: three positive and three negative exemplars.
const ExemplarSet& default_exemplar_set();

/// One record per line: {"summary": ..., "outcome": "positive"|"negative",
/// "score": 0..16}.
ExemplarSet load_exemplars(const std::string& path);

/// Enforces the balanced 3 positive / 3 negative composition. Throws
/// BadExemplarSet.
void validate_exemplar_set(const ExemplarSet& set);

struct PredictConfig {
  bool include_entry_summaries = true;
  std::size_t max_output_chars = 4096;
};

llm::ChatRequest build_zero_shot_prompt(const CaseSummaryStream& stream,
                                        const PromptTemplates& prompts = {},
                                        const PredictConfig& cfg = {});

/// Zero-shot content preceded by the exemplars rendered as
/// summary -> structured-assessment pairs, alternating positive/negative.
llm::ChatRequest build_few_shot_prompt(const CaseSummaryStream& stream,
                                       const ExemplarSet& exemplars,
                                       const PromptTemplates& prompts = {},
                                       const PredictConfig& cfg = {});

/// Structured assessment block for a prediction; parse_prediction inverts it.
std::string render_prediction_json(const RiskPrediction& prediction);

struct ParseOutcome {
  RiskPrediction prediction;
  std::vector<std::string> warnings;
};

/// Extracts the first structured risk object from a model reply, tolerant
/// of surrounding prose and code fences. The numeric score is authoritative:
/// on label/score disagreement the label is recomputed and a warning is
/// recorded. Throws UnparseableResponse / ScoreOutOfRange.
ParseOutcome parse_prediction(std::string_view response_text);

/// Full prediction step: redacts every summary text, builds the prompt for
/// the requested mode, calls the gateway, parses the reply. Retries the
/// call once with a format reminder if the reply is unparseable.
RiskPrediction predict_case(const CaseSummaryStream& stream,
                            llm::Gateway& gateway, PredictionMode mode,
                            const ExemplarSet* exemplars = nullptr,
                            const PromptTemplates& prompts = {},
                            const PredictConfig& cfg = {});

}  // namespace hotline
