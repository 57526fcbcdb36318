#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hotline {

// Shared data model for the hotline risk pipeline: transcripts, segments,
// summaries, predictions and outcome labels.

enum class Speaker { Operator, Caller, Unknown };

std::string to_string(Speaker s);
Speaker speaker_from_string(const std::string& s);

struct Utterance {
  Speaker speaker = Speaker::Unknown;
  std::string text;

  bool operator==(const Utterance&) const = default;
};

/// One full transcribed call. `text` is the canonical dialogue text: the
/// utterance texts joined in order with `separator` (single newline by
/// default).
struct TranscriptDocument {
  std::string text;
  std::vector<Utterance> utterances;
  std::string separator = "\n";

  bool operator==(const TranscriptDocument&) const = default;
};

/// Builds a document whose canonical text is the join of the utterances.
TranscriptDocument make_transcript(std::vector<Utterance> utterances,
                                   std::string separator = "\n");

/// Join utterance texts with the given separator.
std::string join_utterances(const std::vector<Utterance>& utterances,
                            const std::string& separator);

struct TranscriptSegment {
  int index = 0;                // 0-based position within the document
  std::string text;
  std::size_t char_count = 0;   // Unicode code points, not bytes

  bool operator==(const TranscriptSegment&) const = default;
};

/// Summary of one segment, carried in the per-case memory stream.
struct SegmentSummary {
  int segment_index = 0;
  std::string text;
  int importance = 1;   // model-assigned salience, 1..10
  int created_at = 0;   // segment index at creation
  int last_access = 0;  // segment index of most recent retrieval

  bool operator==(const SegmentSummary&) const = default;
};

/// Ordered per-segment summaries plus the whole-case condensation.
struct CaseSummaryStream {
  std::vector<SegmentSummary> entries;
  std::string final_summary;

  bool operator==(const CaseSummaryStream&) const = default;
};

enum class FollowUpStatus { Confirmed, Lost };

std::string to_string(FollowUpStatus s);
FollowUpStatus follow_up_status_from_string(const std::string& s);

/// Ground-truth label gathered through the scheduled follow-up calls.
/// Only Confirmed outcomes enter evaluation.
struct FollowUpOutcome {
  bool attempted_suicide = false;
  FollowUpStatus status = FollowUpStatus::Confirmed;
  int schedule_points_reached = 0;  // 0..4

  bool operator==(const FollowUpOutcome&) const = default;
};

enum class RiskLabel { HighRisk, LowModerate };

std::string to_string(RiskLabel label);
RiskLabel risk_label_from_string(const std::string& s);

/// Total score 8..16 maps to high risk, 0..7 to low-moderate.
constexpr int kHighRiskThreshold = 8;

constexpr RiskLabel label_for_score(int score) {
  return score >= kHighRiskThreshold ? RiskLabel::HighRisk
                                     : RiskLabel::LowModerate;
}

enum class PredictionMode { ZeroShot, FewShot };

std::string to_string(PredictionMode mode);
PredictionMode prediction_mode_from_string(const std::string& s);

/// Parsed structured model output, aligned with the manual scale's 0-16
/// range so the two channels can be fused.
struct RiskPrediction {
  int score = 0;  // 0..16
  RiskLabel label = RiskLabel::LowModerate;
  std::vector<std::string> key_factors;
  std::string rationale;
  PredictionMode mode = PredictionMode::ZeroShot;
  std::string raw_response;  // audit copy of the model reply

  bool operator==(const RiskPrediction&) const = default;
};

}  // namespace hotline
