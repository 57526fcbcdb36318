#pragma once

#include <memory>
#include <string>

#include "hotline/llm/chat.hpp"

namespace hotline::llm {

struct HttpBackendConfig {
  std::string base_url;   // e.g. "http://localhost:8080" or ".../v1"
  std::string model;
  int max_retries = 3;    // retries on timeout/429/5xx
  int timeout_ms = 60000;
  int backoff_ms = 250;   // initial backoff, doubles per retry
  std::string api_key;    // empty -> taken from LLM_API_KEY
};

/// Chat-completions client: POST {base_url}/chat/completions with a
/// system+user message pair, reply read from choices[0].message.content.
/// Transient failures (timeout, 429, 5xx) are retried with exponential
/// backoff; 401/403 raise AuthError immediately; an empty reply raises
/// BackendRefusal.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  ~HttpBackend() override;

  ChatResponse complete(const ChatRequest& request) override;
  std::string id() const override;

 private:
  HttpBackendConfig config_;
  std::string host_;  // scheme://authority
  std::string path_prefix_;
};

}  // namespace hotline::llm
