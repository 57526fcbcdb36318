#pragma once

#include <string>
#include <vector>

#include "hotline/domain.hpp"

namespace hotline {

struct ChunkConfig {
  std::size_t segment_budget_chars = 2000;
  bool include_operator_utterances = true;
};

/// Canonical text a document segments to under the given config: the join of
/// the (possibly operator-filtered) utterances with the document separator.
std::string canonical_text(const TranscriptDocument& doc,
                           const ChunkConfig& cfg);

/// Splits a transcript into ordered segments of at most
/// `segment_budget_chars` characters. Packing is greedy over whole
/// utterances; an utterance that alone exceeds the budget is hard-split at
/// exact budget-sized character boundaries. Concatenating the segments by
/// index reproduces canonical_text(doc, cfg) exactly.
/// Throws EmptyTranscript when nothing remains after filtering.
std::vector<TranscriptSegment> segment_transcript(const TranscriptDocument& doc,
                                                  const ChunkConfig& cfg = {});

}  // namespace hotline
