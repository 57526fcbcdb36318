#pragma once

#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "hotline/domain.hpp"
#include "hotline/errors.hpp"
#include "hotline/llm/chat.hpp"

namespace hotline::test {

/// Wraps a backend and keeps a copy of every request, for asserting on
/// outbound traffic.
class RecordingBackend : public llm::ChatBackend {
 public:
  explicit RecordingBackend(std::shared_ptr<llm::ChatBackend> inner)
      : inner_(std::move(inner)) {}

  llm::ChatResponse complete(const llm::ChatRequest& request) override {
    {
      std::lock_guard lock(mutex_);
      requests_.push_back(request);
    }
    return inner_->complete(request);
  }
  std::string id() const override { return inner_->id(); }

  std::vector<llm::ChatRequest> requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
  }

 private:
  std::shared_ptr<llm::ChatBackend> inner_;
  mutable std::mutex mutex_;
  mutable std::vector<llm::ChatRequest> requests_;
};

/// Replays canned reply texts in order; throws when the script runs dry.
class ScriptedBackend : public llm::ChatBackend {
 public:
  explicit ScriptedBackend(std::vector<std::string> replies)
      : replies_(std::move(replies)) {}

  llm::ChatResponse complete(const llm::ChatRequest&) override {
    std::lock_guard lock(mutex_);
    if (next_ >= replies_.size()) {
      throw BackendRefusal("scripted backend exhausted");
    }
    llm::ChatResponse response;
    response.text = replies_[next_++];
    response.backend_id = "scripted";
    return response;
  }
  std::string id() const override { return "scripted"; }

  std::size_t calls() const {
    std::lock_guard lock(mutex_);
    return next_;
  }

 private:
  std::vector<std::string> replies_;
  mutable std::mutex mutex_;
  std::size_t next_ = 0;
};

/// Random mixed-script document for property tests. Utterance lengths and
/// contents are drawn from the generator, including some multi-byte
/// characters so character/byte confusion would surface.
inline TranscriptDocument random_document(std::mt19937_64& rng,
                                          std::size_t max_utterances = 40,
                                          std::size_t max_utterance_chars = 120) {
  static const std::vector<std::string> alphabet = {
      "a", "b", "c", "d", "e", " ", "你", "好", "很", "难", "想", "说",
      "，", "。", "é", "ß", "🙂"};
  const std::size_t n_utterances = 1 + rng() % max_utterances;
  std::vector<Utterance> utterances;
  for (std::size_t u = 0; u < n_utterances; ++u) {
    const std::size_t n_chars = 1 + rng() % max_utterance_chars;
    std::string text;
    for (std::size_t c = 0; c < n_chars; ++c) {
      text += alphabet[rng() % alphabet.size()];
    }
    const Speaker speaker = rng() % 3 == 0   ? Speaker::Operator
                            : rng() % 2 == 0 ? Speaker::Caller
                                             : Speaker::Unknown;
    utterances.push_back({speaker, std::move(text)});
  }
  return make_transcript(std::move(utterances));
}

}  // namespace hotline::test
