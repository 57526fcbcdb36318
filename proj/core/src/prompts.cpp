#include "hotline/prompts.hpp"

#include <fstream>
#include <sstream>

#include "hotline/errors.hpp"
#include "hotline/llm/chat.hpp"
#include "hotline/scale.hpp"

namespace hotline {

namespace {

constexpr const char* kSummarizeTemplate =
    R"(Background memories from earlier in this call, most relevant first:
{memories}

Summary of the previous segment:
{previous_summary}

Current transcript segment:
{segment_text}

Write a summary of the current segment in at most {budget} characters.
Carry forward background facts that still matter. Capture the caller's
emotional state, any suicidal ideation or plan, stressors, and other
risk-relevant facts.)";

constexpr const char* kImportanceTemplate =
    R"(Rate how important the following case memory is for assessing suicide
risk, on an integer scale from 1 (routine) to 10 (critical). Reply with the
integer only.

{summary_text})";

constexpr const char* kZeroShotTemplate =
    R"(Comprehensive case summary:
{final_summary}

Segment summaries in call order:
{entry_summaries}

Risk factors to consider: {factor_vocabulary}

Assess the caller's suicide risk. Reply with exactly one JSON object of the
form {"risk_score": <integer 0-16>, "risk_label": "high" | "low-moderate",
"key_factors": [<strings>], "rationale": <string>} and nothing else.)";

constexpr const char* kFewShotTemplate =
    R"(Worked examples of assessments with confirmed outcomes:

{exemplars}

Now assess the following case.

Comprehensive case summary:
{final_summary}

Segment summaries in call order:
{entry_summaries}

Risk factors to consider: {factor_vocabulary}

Reply with exactly one JSON object of the form {"risk_score": <integer
0-16>, "risk_label": "high" | "low-moderate", "key_factors": [<strings>],
"rationale": <string>} and nothing else.)";

}  // namespace

PromptTemplates::PromptTemplates()
    : summarize(kSummarizeTemplate),
      importance(kImportanceTemplate),
      zero_shot(kZeroShotTemplate),
      few_shot(kFewShotTemplate) {}

std::string summarize_system_prompt() {
  return std::string(llm::kSummarizeTask) +
         " You support a psychological support hotline team by summarizing "
         "call transcript segments faithfully and concisely.";
}

std::string importance_system_prompt() {
  return std::string(llm::kImportanceTask) +
         " You rate the salience of case memories. Reply with a single "
         "integer from 1 to 10.";
}

std::string predict_system_prompt() {
  return std::string(llm::kPredictTask) +
         " You assess suicide risk from hotline call summaries. Reply with "
         "exactly one JSON object and nothing else.";
}

std::string factor_vocabulary() {
  std::string out;
  for (ScaleElement e : scale_elements()) {
    if (!out.empty()) out += "; ";
    out += element_name(e);
  }
  return out;
}

std::string format_reminder() {
  return "Reminder: reply with exactly one JSON object with fields "
         "\"risk_score\" (integer 0-16), \"risk_label\" (\"high\" or "
         "\"low-moderate\"), \"key_factors\" (array of strings) and "
         "\"rationale\" (string). No other text.";
}

std::string load_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace hotline
