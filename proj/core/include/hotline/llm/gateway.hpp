#pragma once

#include <memory>
#include <string>

#include "hotline/llm/chat.hpp"
#include "hotline/llm/redaction.hpp"

namespace hotline::llm {

/// Uniform entry point in front of a backend. Gates concurrent requests by
/// a bounded in-flight limit, hard-truncates replies that exceed the
/// request's max_output_chars (appending the truncation marker), owns the
/// decoding temperature stamped on outbound requests, and hosts the
/// redactor applied to prompt inputs before transmission.
class Gateway {
 public:
  explicit Gateway(std::shared_ptr<ChatBackend> backend, int max_in_flight = 4,
                   Redactor redactor = {}, double temperature = 0.0);
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  /// Blocks while max_in_flight requests are outstanding.
  ChatResponse complete(const ChatRequest& request);

  RedactionReport redact(std::string_view text) const {
    return redactor_.redact(text);
  }

  const Redactor& redactor() const { return redactor_; }
  ChatBackend& backend() { return *backend_; }

 private:
  struct Slots;
  std::shared_ptr<ChatBackend> backend_;
  Redactor redactor_;
  double temperature_ = 0.0;
  std::unique_ptr<Slots> slots_;
};

}  // namespace hotline::llm
