#include "hotline/llm/gateway.hpp"

#include <condition_variable>
#include <mutex>

#include "hotline/errors.hpp"
#include "hotline/text.hpp"

namespace hotline::llm {

struct Gateway::Slots {
  explicit Slots(int limit) : available(limit) {}

  std::mutex mutex;
  std::condition_variable freed;
  int available;

  void acquire() {
    std::unique_lock lock(mutex);
    freed.wait(lock, [this] { return available > 0; });
    --available;
  }
  void release() {
    {
      std::lock_guard lock(mutex);
      ++available;
    }
    freed.notify_one();
  }
};

Gateway::Gateway(std::shared_ptr<ChatBackend> backend, int max_in_flight,
                 Redactor redactor, double temperature)
    : backend_(std::move(backend)),
      redactor_(std::move(redactor)),
      temperature_(temperature) {
  if (!backend_) throw ConfigError("gateway requires a backend");
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
  if (temperature_ < 0 || temperature_ > 2) {
    throw ConfigError("temperature must be in [0,2]");
  }
  slots_ = std::make_unique<Slots>(max_in_flight);
}

Gateway::~Gateway() = default;

ChatResponse Gateway::complete(const ChatRequest& request) {
  if (request.user_prompt.empty()) {
    throw ValidationError("chat request with empty user prompt");
  }
  if (request.max_output_chars < 1) {
    throw ValidationError("max_output_chars must be >= 1");
  }

  ChatRequest outbound = request;
  outbound.temperature = temperature_;

  slots_->acquire();
  ChatResponse response;
  try {
    response = backend_->complete(outbound);
  } catch (...) {
    slots_->release();
    throw;
  }
  slots_->release();

  if (u8_length(response.text) > request.max_output_chars) {
    response.text = u8_truncate(response.text, request.max_output_chars);
    response.text += kTruncationMarker;
  }
  return response;
}

}  // namespace hotline::llm
