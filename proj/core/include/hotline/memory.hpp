#pragma once

#include <string_view>
#include <vector>

#include "hotline/chunker.hpp"
#include "hotline/domain.hpp"
#include "hotline/llm/gateway.hpp"
#include "hotline/prompts.hpp"

namespace hotline {

/// Retrieval scoring: weighted sum of recency (exponential decay since last
/// access), normalized importance, and lexical relevance to the current
/// segment. Weights must sum to 1.
struct MemoryConfig {
  int top_k = 4;
  double recency_weight = 1.0 / 3;
  double importance_weight = 1.0 / 3;
  double relevance_weight = 1.0 / 3;
  double recency_decay = 0.95;          // in (0,1)
  std::size_t summary_budget_chars = 512;
};

void validate_memory_config(const MemoryConfig& cfg);

/// Cosine similarity of character-bigram frequency vectors, in [0,1].
/// Bigrams are over Unicode code points, so CJK text works unchanged.
double relevance_similarity(std::string_view a, std::string_view b);

/// recency_weight * decay^(current_index - last_access)
///   + importance_weight * importance/10
///   + relevance_weight * relevance(entry text, current segment text).
double score_memory(const SegmentSummary& entry, int current_index,
                    std::string_view current_segment_text,
                    const MemoryConfig& cfg);

/// Up to top_k entries by descending score, ties broken by earlier
/// created_at. Returned entries' last_access is bumped to current_index in
/// the stream ("recently accessed" semantics).
std::vector<SegmentSummary> retrieve_memories(CaseSummaryStream& stream,
                                              int current_index,
                                              std::string_view current_segment_text,
                                              const MemoryConfig& cfg);

/// Summarizes one segment given its retrieved context. The previous
/// segment's summary is always injected when it exists, independent of
/// retrieval. Importance is assigned by a second gateway call. The stored
/// summary never exceeds summary_budget_chars.
SegmentSummary summarize_segment(const TranscriptSegment& segment,
                                 const std::vector<SegmentSummary>& retrieved,
                                 const SegmentSummary* previous,
                                 llm::Gateway& gateway, const MemoryConfig& cfg,
                                 const PromptTemplates& prompts = {});

/// Segments the document and folds summarize_segment over the segments in
/// order (strictly sequential), then condenses all entry summaries into the
/// final whole-case summary.
CaseSummaryStream summarize_case(const TranscriptDocument& doc,
                                 llm::Gateway& gateway,
                                 const ChunkConfig& chunk_cfg = {},
                                 const MemoryConfig& mem_cfg = {},
                                 const PromptTemplates& prompts = {});

}  // namespace hotline
