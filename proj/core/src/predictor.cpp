#include "hotline/predictor.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hotline/errors.hpp"
#include "hotline/text.hpp"

namespace hotline {

namespace {

using nlohmann::json;

std::string join_entry_summaries(const CaseSummaryStream& stream) {
  std::string out;
  for (const auto& entry : stream.entries) {
    if (!out.empty()) out += '\n';
    out += std::to_string(entry.segment_index + 1) + ". " + entry.text;
  }
  return out.empty() ? std::string("(none)") : out;
}

llm::ChatRequest make_request(const std::string& user_prompt,
                              const PredictConfig& cfg) {
  llm::ChatRequest request;
  request.system_prompt = predict_system_prompt();
  request.user_prompt = user_prompt;
  request.max_output_chars = cfg.max_output_chars;
  return request;
}

void require_complete(const CaseSummaryStream& stream) {
  if (stream.final_summary.empty()) {
    throw MissingSummary("stream has no final summary");
  }
  for (std::size_t i = 0; i < stream.entries.size(); ++i) {
    if (stream.entries[i].segment_index != static_cast<int>(i)) {
      throw MissingSummary("stream entries have gaps");
    }
  }
}

std::string render_exemplars(const ExemplarSet& set) {
  std::vector<const Exemplar*> positives;
  std::vector<const Exemplar*> negatives;
  for (const auto& e : set.exemplars) {
    (e.positive ? positives : negatives).push_back(&e);
  }

  // Alternate positive/negative to avoid order bias.
  std::string out;
  for (std::size_t i = 0; i < std::max(positives.size(), negatives.size());
       ++i) {
    for (const auto* list : {&positives, &negatives}) {
      if (i >= list->size()) continue;
      const Exemplar& e = *(*list)[i];
      RiskPrediction p;
      p.score = e.score;
      p.label = label_for_score(e.score);
      p.rationale = e.positive
                        ? "confirmed suicidal behavior during follow-up"
                        : "no suicidal behavior during follow-up";
      if (!out.empty()) out += "\n\n";
      out += "Case summary:\n" + e.summary +
             "\nAssessment: " + render_prediction_json(p);
    }
  }
  return out;
}

// Balanced extent of a JSON object starting at `start` ('{'), or npos.
std::size_t object_extent(std::string_view text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

}  // namespace

int ExemplarSet::positive_count() const {
  return static_cast<int>(
      std::count_if(exemplars.begin(), exemplars.end(),
                    [](const Exemplar& e) { return e.positive; }));
}

int ExemplarSet::negative_count() const {
  return static_cast<int>(exemplars.size()) - positive_count();
}

const ExemplarSet& default_exemplar_set() {
  static const ExemplarSet set = {{
      {"Caller described a concrete plan and recent preparations, reported "
       "feeling hopeless about debts, and said goodbye messages were "
       "already written. Mood deteriorated over the call.",
       true, 12},
      {"Caller reported constant low mood for months, a previous attempt "
       "last year, and acute conflict at home this week. No stated plan, "
       "but could not name a reason to stay safe.",
       true, 9},
      {"Caller spoke of unbearable pressure after a sudden job loss, heavy "
       "drinking in recent weeks, and recurring thoughts of ending things, "
       "though without a specific method.",
       true, 8},
      {"Caller was distressed about an upcoming exam and argued with "
       "parents, denied any thoughts of self-harm, and planned to see the "
       "school counselor.",
       false, 2},
      {"Caller felt lonely after moving cities and had trouble sleeping; "
       "mood lifted while talking. No ideation, no prior attempts, stable "
       "work.",
       false, 1},
      {"Caller worried about a parent's illness and their own fatigue, "
       "mentioned passing dark thoughts but firmly rejected acting on "
       "them; family support is present.",
       false, 5},
  }};
  return set;
}

ExemplarSet load_exemplars(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open exemplar file: " + path);

  ExemplarSet set;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw ConfigError("exemplar file line " + std::to_string(line_no) +
                        ": not a JSON object");
    }
    Exemplar e;
    e.summary = record.value("summary", std::string());
    const std::string outcome = record.value("outcome", std::string());
    if (outcome != "positive" && outcome != "negative") {
      throw ConfigError("exemplar file line " + std::to_string(line_no) +
                        ": outcome must be \"positive\" or \"negative\"");
    }
    e.positive = outcome == "positive";
    e.score = record.value("score", -1);
    if (e.summary.empty() || e.score < 0 || e.score > 16) {
      throw ConfigError("exemplar file line " + std::to_string(line_no) +
                        ": needs summary and score in [0,16]");
    }
    set.exemplars.push_back(std::move(e));
  }
  return set;
}

void validate_exemplar_set(const ExemplarSet& set) {
  if (set.positive_count() != 3 || set.negative_count() != 3) {
    throw BadExemplarSet("exemplar set must hold 3 positive and 3 negative "
                         "cases, got " +
                         std::to_string(set.positive_count()) + "/" +
                         std::to_string(set.negative_count()));
  }
}

llm::ChatRequest build_zero_shot_prompt(const CaseSummaryStream& stream,
                                        const PromptTemplates& prompts,
                                        const PredictConfig& cfg) {
  require_complete(stream);
  return make_request(
      render_template(prompts.zero_shot,
                      {{"final_summary", stream.final_summary},
                       {"entry_summaries", cfg.include_entry_summaries
                                               ? join_entry_summaries(stream)
                                               : std::string("(omitted)")},
                       {"factor_vocabulary", factor_vocabulary()}}),
      cfg);
}

llm::ChatRequest build_few_shot_prompt(const CaseSummaryStream& stream,
                                       const ExemplarSet& exemplars,
                                       const PromptTemplates& prompts,
                                       const PredictConfig& cfg) {
  require_complete(stream);
  validate_exemplar_set(exemplars);
  return make_request(
      render_template(prompts.few_shot,
                      {{"exemplars", render_exemplars(exemplars)},
                       {"final_summary", stream.final_summary},
                       {"entry_summaries", cfg.include_entry_summaries
                                               ? join_entry_summaries(stream)
                                               : std::string("(omitted)")},
                       {"factor_vocabulary", factor_vocabulary()}}),
      cfg);
}

std::string render_prediction_json(const RiskPrediction& prediction) {
  json out = {
      {"risk_score", prediction.score},
      {"risk_label", to_string(prediction.label)},
      {"key_factors", prediction.key_factors},
      {"rationale", prediction.rationale},
  };
  return out.dump();
}

ParseOutcome parse_prediction(std::string_view response_text) {
  std::size_t pos = 0;
  while ((pos = response_text.find('{', pos)) != std::string_view::npos) {
    const std::size_t end = object_extent(response_text, pos);
    if (end == std::string_view::npos) {
      ++pos;
      continue;
    }
    json candidate =
        json::parse(response_text.substr(pos, end - pos), nullptr, false);
    if (candidate.is_discarded() || !candidate.is_object() ||
        !candidate.contains("risk_score")) {
      ++pos;
      continue;
    }

    const json& score_field = candidate["risk_score"];
    if (!score_field.is_number_integer() &&
        !(score_field.is_number_float() &&
          score_field.get<double>() ==
              static_cast<double>(score_field.get<long>()))) {
      throw ScoreOutOfRange("risk_score is not an integer");
    }
    const long score = score_field.get<long>();
    if (score < 0 || score > 16) {
      throw ScoreOutOfRange("risk_score " + std::to_string(score) +
                            " outside [0,16]");
    }

    ParseOutcome outcome;
    outcome.prediction.score = static_cast<int>(score);
    outcome.prediction.label = label_for_score(outcome.prediction.score);
    outcome.prediction.raw_response = std::string(response_text);

    if (candidate.contains("risk_label") && candidate["risk_label"].is_string()) {
      const std::string label = candidate["risk_label"].get<std::string>();
      const std::string expected = to_string(outcome.prediction.label);
      if (label != expected) {
        outcome.warnings.push_back("risk_label \"" + label +
                                   "\" disagrees with score " +
                                   std::to_string(score) + "; recomputed to \"" +
                                   expected + "\"");
      }
    }
    if (candidate.contains("key_factors") && candidate["key_factors"].is_array()) {
      for (const auto& f : candidate["key_factors"]) {
        if (f.is_string()) outcome.prediction.key_factors.push_back(f.get<std::string>());
      }
    }
    if (candidate.contains("rationale") && candidate["rationale"].is_string()) {
      outcome.prediction.rationale = candidate["rationale"].get<std::string>();
    }
    if (outcome.prediction.label == RiskLabel::HighRisk &&
        outcome.prediction.key_factors.empty()) {
      outcome.warnings.push_back("high-risk prediction without key factors");
    }
    return outcome;
  }
  throw UnparseableResponse("no structured risk object in response");
}

RiskPrediction predict_case(const CaseSummaryStream& stream,
                            llm::Gateway& gateway, PredictionMode mode,
                            const ExemplarSet* exemplars,
                            const PromptTemplates& prompts,
                            const PredictConfig& cfg) {
  require_complete(stream);

  // Privacy boundary: only redacted summary text may enter the prompt.
  CaseSummaryStream redacted = stream;
  for (auto& entry : redacted.entries) {
    entry.text = gateway.redact(entry.text).redacted_text;
  }
  redacted.final_summary = gateway.redact(stream.final_summary).redacted_text;

  ExemplarSet redacted_exemplars;
  llm::ChatRequest request;
  if (mode == PredictionMode::FewShot) {
    const ExemplarSet& base = exemplars ? *exemplars : default_exemplar_set();
    redacted_exemplars = base;
    for (auto& e : redacted_exemplars.exemplars) {
      e.summary = gateway.redact(e.summary).redacted_text;
    }
    request = build_few_shot_prompt(redacted, redacted_exemplars, prompts, cfg);
  } else {
    request = build_zero_shot_prompt(redacted, prompts, cfg);
  }

  auto finish = [&](ParseOutcome outcome, std::string raw) {
    outcome.prediction.mode = mode;
    outcome.prediction.raw_response = std::move(raw);
    return outcome.prediction;
  };

  const llm::ChatResponse first = gateway.complete(request);
  try {
    return finish(parse_prediction(first.text), first.text);
  } catch (const UnparseableResponse&) {
    // One retry with an explicit format reminder.
  }

  llm::ChatRequest retry = request;
  retry.user_prompt += "\n\n" + format_reminder();
  const llm::ChatResponse second = gateway.complete(retry);
  try {
    return finish(parse_prediction(second.text), second.text);
  } catch (const UnparseableResponse&) {
    throw UnparseableResponse(
        "no structured risk object after format-reminder retry; first reply "
        "began: \"" +
        u8_truncate(first.text, 80) + "\", second reply began: \"" +
        u8_truncate(second.text, 80) + "\"");
  }
}

}  // namespace hotline
