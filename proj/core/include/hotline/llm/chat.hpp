#pragma once

#include <string>
#include <string_view>

namespace hotline::llm {

// Task sentinels carried in system prompts. The deterministic mock backend
// dispatches on them; real backends just see them as part of the
// instructions.
inline constexpr std::string_view kSummarizeTask = "[task:summarize]";
inline constexpr std::string_view kImportanceTask = "[task:importance]";
inline constexpr std::string_view kPredictTask = "[task:predict]";

/// Appended when a reply had to be hard-truncated (12 characters).
inline constexpr std::string_view kTruncationMarker = "…[truncated]";

struct ChatRequest {
  std::string system_prompt;
  std::string user_prompt;
  std::size_t max_output_chars = 512;
  double temperature = 0.0;  // 0 for reproducibility
};

struct ChatResponse {
  std::string text;
  std::string backend_id;
  long latency_ms = 0;
  int attempt_count = 1;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
  virtual std::string id() const = 0;
};

}  // namespace hotline::llm
