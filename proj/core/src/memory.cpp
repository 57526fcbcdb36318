#include "hotline/memory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hotline/errors.hpp"
#include "hotline/text.hpp"

namespace hotline {

namespace {

constexpr std::size_t kTruncationMarkerChars = 12;  // "…[truncated]"

// Code points of a UTF-8 string as byte ranges.
std::vector<std::string_view> code_points(std::string_view s) {
  std::vector<std::string_view> cps;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i == s.size() || (static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      cps.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  return cps;
}

std::map<std::string, int> bigram_counts(std::string_view s) {
  std::map<std::string, int> counts;
  auto cps = code_points(s);
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
    // Adjacent code points are contiguous bytes, so the bigram is one slice.
    std::string bigram(cps[i].data(), cps[i].size() + cps[i + 1].size());
    ++counts[bigram];
  }
  return counts;
}

[[noreturn]] void rethrow_with_segment(int index) {
  const std::string where = "segment " + std::to_string(index) + ": ";
  try {
    throw;
  } catch (const TransportError& e) {
    throw TransportError(where + e.what(), e.attempts);
  } catch (const AuthError& e) {
    throw AuthError(where + e.what());
  } catch (const BackendRefusal& e) {
    throw BackendRefusal(where + e.what());
  } catch (const UnknownPromptShape& e) {
    throw UnknownPromptShape(where + e.what());
  } catch (const Error& e) {
    throw Error(where + e.what());
  }
}

int parse_importance(std::string_view reply) {
  std::size_t i = 0;
  while (i < reply.size() && (reply[i] < '0' || reply[i] > '9')) ++i;
  if (i == reply.size()) return 5;  // no integer in the reply
  int value = 0;
  while (i < reply.size() && reply[i] >= '0' && reply[i] <= '9') {
    value = value * 10 + (reply[i] - '0');
    if (value > 10) break;
    ++i;
  }
  return std::clamp(value, 1, 10);
}

}  // namespace

void validate_memory_config(const MemoryConfig& cfg) {
  if (cfg.top_k < 1) throw ConfigError("memory.top_k must be >= 1");
  const double sum =
      cfg.recency_weight + cfg.importance_weight + cfg.relevance_weight;
  if (cfg.recency_weight < 0 || cfg.importance_weight < 0 ||
      cfg.relevance_weight < 0 || std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("memory weights must be non-negative and sum to 1");
  }
  if (cfg.recency_decay <= 0 || cfg.recency_decay >= 1) {
    throw ConfigError("memory.recency_decay must be in (0,1)");
  }
  if (cfg.summary_budget_chars < 1) {
    throw ConfigError("chunk.summary_budget_chars must be >= 1");
  }
}

double relevance_similarity(std::string_view a, std::string_view b) {
  const auto ca = bigram_counts(a);
  const auto cb = bigram_counts(b);
  if (ca.empty() || cb.empty()) return 0.0;

  double dot = 0.0;
  for (const auto& [bigram, count] : ca) {
    auto it = cb.find(bigram);
    if (it != cb.end()) dot += static_cast<double>(count) * it->second;
  }
  auto norm = [](const std::map<std::string, int>& counts) {
    double s = 0.0;
    for (const auto& [_, c] : counts) s += static_cast<double>(c) * c;
    return std::sqrt(s);
  };
  return std::clamp(dot / (norm(ca) * norm(cb)), 0.0, 1.0);
}

double score_memory(const SegmentSummary& entry, int current_index,
                    std::string_view current_segment_text,
                    const MemoryConfig& cfg) {
  const int gap = std::max(0, current_index - entry.last_access);
  const double recency = std::pow(cfg.recency_decay, gap);
  const double importance = static_cast<double>(entry.importance) / 10.0;
  const double relevance =
      relevance_similarity(entry.text, current_segment_text);
  const double score = cfg.recency_weight * recency +
                       cfg.importance_weight * importance +
                       cfg.relevance_weight * relevance;
  return std::clamp(score, 0.0, 1.0);
}

std::vector<SegmentSummary> retrieve_memories(CaseSummaryStream& stream,
                                              int current_index,
                                              std::string_view current_segment_text,
                                              const MemoryConfig& cfg) {
  struct Scored {
    double score;
    std::size_t index;
  };
  std::vector<Scored> scored;
  scored.reserve(stream.entries.size());
  for (std::size_t i = 0; i < stream.entries.size(); ++i) {
    scored.push_back(
        {score_memory(stream.entries[i], current_index, current_segment_text,
                      cfg),
         i});
  }
  std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return stream.entries[a.index].created_at <
           stream.entries[b.index].created_at;
  });

  const std::size_t k =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.top_k), scored.size());
  std::vector<SegmentSummary> retrieved;
  retrieved.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    stream.entries[scored[i].index].last_access = current_index;
    retrieved.push_back(stream.entries[scored[i].index]);
  }
  return retrieved;
}

SegmentSummary summarize_segment(const TranscriptSegment& segment,
                                 const std::vector<SegmentSummary>& retrieved,
                                 const SegmentSummary* previous,
                                 llm::Gateway& gateway, const MemoryConfig& cfg,
                                 const PromptTemplates& prompts) {
  validate_memory_config(cfg);

  std::string memories;
  for (const auto& m : retrieved) {
    if (previous && m.segment_index == previous->segment_index) {
      continue;  // already injected through its own slot
    }
    if (!memories.empty()) memories += '\n';
    memories += m.text;
  }
  if (memories.empty()) memories = "(none)";

  llm::ChatRequest request;
  request.system_prompt = summarize_system_prompt();
  request.user_prompt = render_template(
      prompts.summarize,
      {{"memories", memories},
       {"previous_summary", previous ? previous->text : "(none)"},
       {"segment_text", segment.text},
       {"budget", std::to_string(cfg.summary_budget_chars)}});
  // Leave room for the truncation marker so the stored summary never
  // exceeds the budget.
  request.max_output_chars =
      cfg.summary_budget_chars > kTruncationMarkerChars
          ? cfg.summary_budget_chars - kTruncationMarkerChars
          : cfg.summary_budget_chars;

  SegmentSummary summary;
  try {
    summary.text =
        u8_truncate(gateway.complete(request).text, cfg.summary_budget_chars);

    llm::ChatRequest importance_request;
    importance_request.system_prompt = importance_system_prompt();
    importance_request.user_prompt = render_template(
        prompts.importance, {{"summary_text", summary.text}});
    importance_request.max_output_chars = 16;
    summary.importance =
        parse_importance(gateway.complete(importance_request).text);
  } catch (...) {
    rethrow_with_segment(segment.index);
  }

  summary.segment_index = segment.index;
  summary.created_at = segment.index;
  summary.last_access = segment.index;
  return summary;
}

CaseSummaryStream summarize_case(const TranscriptDocument& doc,
                                 llm::Gateway& gateway,
                                 const ChunkConfig& chunk_cfg,
                                 const MemoryConfig& mem_cfg,
                                 const PromptTemplates& prompts) {
  validate_memory_config(mem_cfg);
  const auto segments = segment_transcript(doc, chunk_cfg);

  CaseSummaryStream stream;
  for (const auto& segment : segments) {
    auto retrieved =
        retrieve_memories(stream, segment.index, segment.text, mem_cfg);
    const SegmentSummary* previous =
        stream.entries.empty() ? nullptr : &stream.entries.back();
    stream.entries.push_back(summarize_segment(segment, retrieved, previous,
                                               gateway, mem_cfg, prompts));
  }

  std::string collected;
  for (const auto& entry : stream.entries) {
    if (!collected.empty()) collected += '\n';
    collected += entry.text;
  }

  llm::ChatRequest final_request;
  final_request.system_prompt = summarize_system_prompt();
  final_request.user_prompt =
      "Segment summaries of the whole call, in order:\n" + collected +
      "\n\nCondense these into one complete record of the caller's recent "
      "condition and tendencies toward suicide, in at most " +
      std::to_string(mem_cfg.summary_budget_chars) + " characters.";
  final_request.max_output_chars =
      mem_cfg.summary_budget_chars > kTruncationMarkerChars
          ? mem_cfg.summary_budget_chars - kTruncationMarkerChars
          : mem_cfg.summary_budget_chars;

  try {
    stream.final_summary = u8_truncate(gateway.complete(final_request).text,
                                       mem_cfg.summary_budget_chars);
  } catch (...) {
    rethrow_with_segment(static_cast<int>(segments.size()) - 1);
  }
  return stream;
}

}  // namespace hotline
