#include "hotline/llm/mock_backend.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "hotline/errors.hpp"
#include "hotline/text.hpp"

namespace hotline::llm {

namespace {

std::string summarize_reply(const ChatRequest& req, const RiskLexicon& lex) {
  std::string out;
  for (const auto* factor : match_factors(req.user_prompt, lex)) {
    if (!out.empty()) out += ' ';
    out += factor->tag;
  }
  if (!out.empty()) out += '\n';

  const std::size_t used = u8_length(out);
  if (used < req.max_output_chars) {
    out += u8_truncate(req.user_prompt, req.max_output_chars - used);
  }
  return u8_truncate(out, req.max_output_chars);
}

std::string predict_reply(const ChatRequest& req, const RiskLexicon& lex) {
  const auto matched = match_factors(req.user_prompt, lex);
  int score = 0;
  nlohmann::json factors = nlohmann::json::array();
  std::string listed;
  for (const auto* factor : matched) {
    score += factor->weight;
    factors.push_back(factor->name);
    if (!listed.empty()) listed += ", ";
    listed += factor->name;
  }
  score = std::min(score, 16);

  nlohmann::json reply = {
      {"risk_score", score},
      {"risk_label", to_string(label_for_score(score))},
      {"key_factors", factors},
      {"rationale", matched.empty()
                        ? std::string("no risk factors identified in the summaries")
                        : "identified factors: " + listed},
  };
  return reply.dump();
}

}  // namespace

MockBackend::MockBackend(RiskLexicon lexicon) : lexicon_(std::move(lexicon)) {
  if (lexicon_.empty()) throw ConfigError("mock backend needs a non-empty lexicon");
}

ChatResponse MockBackend::complete(const ChatRequest& request) {
  if (request.user_prompt.empty()) {
    throw ValidationError("chat request with empty user prompt");
  }

  ChatResponse response;
  response.backend_id = id();
  response.latency_ms = 0;
  response.attempt_count = 1;

  const std::string& sys = request.system_prompt;
  if (sys.find(kSummarizeTask) != std::string::npos) {
    response.text = summarize_reply(request, lexicon_);
  } else if (sys.find(kImportanceTask) != std::string::npos) {
    int value = std::clamp(matched_weight_sum(request.user_prompt, lexicon_), 1, 10);
    response.text = std::to_string(value);
  } else if (sys.find(kPredictTask) != std::string::npos) {
    response.text = predict_reply(request, lexicon_);
  } else {
    throw UnknownPromptShape("no task sentinel in system prompt");
  }
  return response;
}

}  // namespace hotline::llm
