#include "hotline/llm/http_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hotline/errors.hpp"

namespace hotline::llm {

namespace {

// Splits "http://host:port/v1" into origin and path prefix.
std::pair<std::string, std::string> split_base_url(const std::string& url) {
  auto scheme_end = url.find("://");
  std::size_t authority_start = scheme_end == std::string::npos
                                    ? 0
                                    : scheme_end + 3;
  auto path_start = url.find('/', authority_start);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

bool transient_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) {
    throw ConfigError("http backend requires backend.base_url");
  }
  if (config_.api_key.empty()) {
    if (const char* key = std::getenv("LLM_API_KEY")) config_.api_key = key;
  }
  std::tie(host_, path_prefix_) = split_base_url(config_.base_url);
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::id() const {
  return "http:" + config_.model;
}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
  if (request.user_prompt.empty()) {
    throw ValidationError("chat request with empty user prompt");
  }

  nlohmann::json body = {
      {"model", config_.model},
      {"messages",
       {{{"role", "system"}, {"content", request.system_prompt}},
        {{"role", "user"}, {"content", request.user_prompt}}}},
      {"temperature", request.temperature},
  };
  const std::string payload = body.dump();
  const std::string path = path_prefix_ + "/chat/completions";

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  const auto started = std::chrono::steady_clock::now();
  const int max_attempts = config_.max_retries + 1;
  std::string last_error;

  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    httplib::Client client(host_);
    client.set_connection_timeout(std::chrono::milliseconds(config_.timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(config_.timeout_ms));
    client.set_write_timeout(std::chrono::milliseconds(config_.timeout_ms));

    auto res = client.Post(path, headers, payload, "application/json");

    if (res) {
      if (res->status == 401 || res->status == 403) {
        throw AuthError("credential rejected (HTTP " +
                        std::to_string(res->status) + ")");
      }
      if (res->status == 200) {
        nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
        std::string content;
        if (!reply.is_discarded() && reply.contains("choices") &&
            reply["choices"].is_array() && !reply["choices"].empty()) {
          content = reply["choices"][0].value(
              nlohmann::json::json_pointer("/message/content"), std::string());
        }
        if (content.empty()) {
          throw BackendRefusal("backend reply empty or malformed");
        }
        ChatResponse response;
        response.text = std::move(content);
        response.backend_id = id();
        response.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
        response.attempt_count = attempt;
        return response;
      }
      if (!transient_status(res->status)) {
        throw TransportError("HTTP " + std::to_string(res->status), attempt);
      }
      last_error = "HTTP " + std::to_string(res->status);
    } else {
      last_error = httplib::to_string(res.error());
    }

    if (attempt < max_attempts) {
      auto delay = std::chrono::milliseconds(
          static_cast<long>(config_.backoff_ms) << (attempt - 1));
      std::this_thread::sleep_for(delay);
    }
  }

  throw TransportError("retries exhausted: " + last_error, max_attempts);
}

}  // namespace hotline::llm
