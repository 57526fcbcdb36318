#pragma once

#include <string>

namespace hotline {

/// User-prompt templates with {placeholder} slots. System prompts are fixed
/// (they carry the task sentinels the mock backend dispatches on); only the
/// user-facing templates are file-overridable.
struct PromptTemplates {
  /// Slots: {memories} {previous_summary} {segment_text} {budget}
  std::string summarize;
  /// Slots: {summary_text}
  std::string importance;
  /// Slots: {final_summary} {entry_summaries} {factor_vocabulary}
  std::string zero_shot;
  /// Slots: {exemplars} plus the zero-shot slots
  std::string few_shot;

  PromptTemplates();
};

std::string summarize_system_prompt();
std::string importance_system_prompt();
std::string predict_system_prompt();

/// The 12 scale element names joined as the prediction factor vocabulary.
std::string factor_vocabulary();

/// Reminder appended when a prediction reply could not be parsed.
std::string format_reminder();

/// Whole-file read, UTF-8. Used for template overrides.
std::string load_text_file(const std::string& path);

}  // namespace hotline
