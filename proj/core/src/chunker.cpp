#include "hotline/chunker.hpp"

#include "hotline/errors.hpp"
#include "hotline/text.hpp"

namespace hotline {

namespace {

std::vector<Utterance> filtered_utterances(const TranscriptDocument& doc,
                                           const ChunkConfig& cfg) {
  if (cfg.include_operator_utterances) return doc.utterances;
  std::vector<Utterance> kept;
  for (const auto& u : doc.utterances) {
    if (u.speaker != Speaker::Operator) kept.push_back(u);
  }
  return kept;
}

}  // namespace

std::string canonical_text(const TranscriptDocument& doc,
                           const ChunkConfig& cfg) {
  if (cfg.include_operator_utterances) return doc.text;
  return join_utterances(filtered_utterances(doc, cfg), doc.separator);
}

std::vector<TranscriptSegment> segment_transcript(const TranscriptDocument& doc,
                                                  const ChunkConfig& cfg) {
  const std::size_t budget = cfg.segment_budget_chars;
  if (budget < 1) throw ConfigError("segment_budget_chars must be >= 1");

  const auto utterances = filtered_utterances(doc, cfg);
  if (join_utterances(utterances, doc.separator).empty()) {
    throw EmptyTranscript("transcript empty after filtering");
  }

  std::vector<TranscriptSegment> segments;
  std::string current;
  std::size_t current_chars = 0;

  auto close_current = [&] {
    if (current.empty()) return;
    segments.push_back({static_cast<int>(segments.size()), std::move(current),
                        current_chars});
    current.clear();
    current_chars = 0;
  };

  for (std::size_t i = 0; i < utterances.size(); ++i) {
    // Pieces of the canonical text: the separator travels with the utterance
    // that follows it, so segment concatenation stays lossless.
    std::string piece =
        (i == 0) ? utterances[i].text : doc.separator + utterances[i].text;
    std::size_t piece_chars = u8_length(piece);

    if (current_chars + piece_chars > budget) close_current();

    if (piece_chars > budget) {
      // Hard split: full budget-sized chunks, remainder stays open for the
      // next utterances.
      std::string_view rest = piece;
      std::size_t rest_chars = piece_chars;
      while (rest_chars > budget) {
        std::size_t cut = u8_byte_offset(rest, budget);
        segments.push_back({static_cast<int>(segments.size()),
                            std::string(rest.substr(0, cut)), budget});
        rest.remove_prefix(cut);
        rest_chars -= budget;
      }
      current.assign(rest);
      current_chars = rest_chars;
    } else {
      current += piece;
      current_chars += piece_chars;
    }
  }
  close_current();

  return segments;
}

}  // namespace hotline
