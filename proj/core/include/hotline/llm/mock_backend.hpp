#pragma once

#include "hotline/llm/chat.hpp"
#include "hotline/llm/lexicon.hpp"

namespace hotline::llm {

/// Deterministic offline backend driven by the keyword lexicon. Output is a
/// pure function of (request, lexicon):
///  - summarize requests echo the matched factor tags plus a prefix of the
///    input, within max_output_chars;
///  - importance requests reply with the matched weight sum clamped to 1-10;
///  - predict requests reply with a structured risk object whose score is
///    the matched weight sum capped at 16.
/// Requests without a task sentinel raise UnknownPromptShape.
class MockBackend : public ChatBackend {
 public:
  explicit MockBackend(RiskLexicon lexicon = default_risk_lexicon());

  ChatResponse complete(const ChatRequest& request) override;
  std::string id() const override { return "mock"; }

  const RiskLexicon& lexicon() const { return lexicon_; }

 private:
  RiskLexicon lexicon_;
};

}  // namespace hotline::llm
