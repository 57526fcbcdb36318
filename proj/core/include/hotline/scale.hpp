#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hotline/domain.hpp"

namespace hotline {

// The 12-element suicide risk assessment scale. Element scores sum to a
// 0-16 total; 8-16 is high risk. The parenthesized questionnaire item
// counts are informational; items are not modeled separately, only the
// element score.

enum class ScaleElement {
  SuicidalIdeationAndPlan,  // (3 items) 0/1/4
  SevereDepression,         // (11 items) 0/1
  Hopelessness,             // (1 item) 0/1
  PsychologicalDistress,    // (1 item) 0/1
  AcuteLifeEvents,          // (2 items) 0/2
  ChronicLifeEvents,        // (2 items) 0/1
  AlcoholOrSubstanceMisuse, // (3 items) 0/1
  SeverePhysicalIllness,    // (1 item) 0/1
  FearOfBeingAttacked,      // (2 items) 0/1
  HistoryOfBeingAbused,     // (2 items) 0/1
  SuicideAttemptHistory,    // (1 item) 0/1
  RelativesSuicidalActsHistory,  // (2 items) 0/1
};

constexpr std::size_t kScaleElementCount = 12;

/// All elements in scale order.
const std::array<ScaleElement, kScaleElementCount>& scale_elements();

/// snake_case key used in record files ("suicidal_ideation_and_plan", ...).
std::string element_key(ScaleElement e);

/// Human-readable element name ("Suicidal ideation and plan", ...).
std::string element_name(ScaleElement e);

ScaleElement element_from_key(const std::string& key);

/// Permitted score values for one element.
std::vector<int> permitted_scores(ScaleElement e);

/// Maximum score of one element (4, 2 or 1).
int element_max_score(ScaleElement e);

/// One operator-administered scale record; absent answers are unanswered.
struct ManualScaleRecord {
  std::array<std::optional<int>, kScaleElementCount> answers;

  std::optional<int>& answer(ScaleElement e) {
    return answers[static_cast<std::size_t>(e)];
  }
  const std::optional<int>& answer(ScaleElement e) const {
    return answers[static_cast<std::size_t>(e)];
  }
  int unanswered_count() const;

  bool operator==(const ManualScaleRecord&) const = default;
};

/// More than this many unanswered elements makes the record's score missing.
constexpr int kMaxUnansweredElements = 5;

struct ScaleResult {
  std::optional<int> total;        // 0..16 when present
  std::optional<RiskLabel> label;
  bool missing = false;

  bool operator==(const ScaleResult&) const = default;
};

/// Sums the answered elements (absent answers score 0) and classifies at the
/// high-risk threshold. A record with more than five unanswered elements
/// yields a missing result. Throws InvalidAnswer if any answer is outside
/// its element's permitted set.
ScaleResult score_scale(const ManualScaleRecord& record);

/// Weighted combination of the manual total and the model score.
struct FusionConfig {
  double alpha = 0.5;      // manual scale weight
  double beta = 0.5;       // model score weight
  double threshold = 8.0;  // high-risk cut on the combined score
};

/// Throws ConfigError when weights are negative or both zero.
void validate_fusion_config(const FusionConfig& cfg);

struct FusedAssessment {
  double combined = 0.0;  // alpha * manual_total + beta * llm_score
  RiskLabel label = RiskLabel::LowModerate;
  int manual_total = 0;
  int llm_score = 0;

  bool operator==(const FusedAssessment&) const = default;
};

/// Combines a scored scale with a model prediction. Throws MissingManualScore
/// when the scale result is missing; such cases are excluded from fused
/// evaluation rather than falling back to the model alone.
FusedAssessment fuse_scores(const ScaleResult& manual,
                            const RiskPrediction& pred,
                            const FusionConfig& cfg = {});

}  // namespace hotline
