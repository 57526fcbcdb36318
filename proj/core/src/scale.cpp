#include "hotline/scale.hpp"

#include <algorithm>

#include "hotline/errors.hpp"

namespace hotline {

namespace {

struct ElementInfo {
  ScaleElement element;
  const char* key;
  const char* name;
  int max_score;
};

// Scale rows in instrument order. SuicidalIdeationAndPlan scores 0/1/4,
// AcuteLifeEvents 0/2, everything else 0/1.
constexpr ElementInfo kElements[kScaleElementCount] = {
    {ScaleElement::SuicidalIdeationAndPlan, "suicidal_ideation_and_plan",
     "Suicidal ideation and plan", 4},
    {ScaleElement::SevereDepression, "severe_depression", "Severe depression",
     1},
    {ScaleElement::Hopelessness, "hopelessness", "Hopelessness", 1},
    {ScaleElement::PsychologicalDistress, "psychological_distress",
     "Psychological distress", 1},
    {ScaleElement::AcuteLifeEvents, "acute_life_events", "Acute life events",
     2},
    {ScaleElement::ChronicLifeEvents, "chronic_life_events",
     "Chronic life events", 1},
    {ScaleElement::AlcoholOrSubstanceMisuse, "alcohol_or_substance_misuse",
     "Alcohol or substance misuse", 1},
    {ScaleElement::SeverePhysicalIllness, "severe_physical_illness",
     "Severe physical illness", 1},
    {ScaleElement::FearOfBeingAttacked, "fear_of_being_attacked",
     "Fear of being attacked", 1},
    {ScaleElement::HistoryOfBeingAbused, "history_of_being_abused",
     "History of being abused", 1},
    {ScaleElement::SuicideAttemptHistory, "suicide_attempt_history",
     "Suicide attempt history", 1},
    {ScaleElement::RelativesSuicidalActsHistory,
     "relatives_suicidal_acts_history",
     "Relatives or acquaintances suicidal acts history", 1},
};

const ElementInfo& info(ScaleElement e) {
  return kElements[static_cast<std::size_t>(e)];
}

}  // namespace

const std::array<ScaleElement, kScaleElementCount>& scale_elements() {
  static const std::array<ScaleElement, kScaleElementCount> order = [] {
    std::array<ScaleElement, kScaleElementCount> a{};
    for (std::size_t i = 0; i < kScaleElementCount; ++i)
      a[i] = kElements[i].element;
    return a;
  }();
  return order;
}

std::string element_key(ScaleElement e) { return info(e).key; }

std::string element_name(ScaleElement e) { return info(e).name; }

ScaleElement element_from_key(const std::string& key) {
  for (const auto& el : kElements) {
    if (key == el.key) return el.element;
  }
  throw ValidationError("unknown scale element key: " + key);
}

std::vector<int> permitted_scores(ScaleElement e) {
  switch (info(e).max_score) {
    case 4: return {0, 1, 4};
    case 2: return {0, 2};
    default: return {0, 1};
  }
}

int element_max_score(ScaleElement e) { return info(e).max_score; }

int ManualScaleRecord::unanswered_count() const {
  int n = 0;
  for (const auto& a : answers) {
    if (!a.has_value()) ++n;
  }
  return n;
}

ScaleResult score_scale(const ManualScaleRecord& record) {
  for (std::size_t i = 0; i < kScaleElementCount; ++i) {
    const auto& a = record.answers[i];
    if (!a.has_value()) continue;
    auto allowed = permitted_scores(kElements[i].element);
    if (std::find(allowed.begin(), allowed.end(), *a) == allowed.end()) {
      throw InvalidAnswer("answer " + std::to_string(*a) +
                          " not permitted for element " +
                          std::string(kElements[i].key));
    }
  }

  if (record.unanswered_count() > kMaxUnansweredElements) {
    ScaleResult result;
    result.missing = true;
    return result;
  }

  int total = 0;
  for (const auto& a : record.answers) total += a.value_or(0);

  ScaleResult result;
  result.total = total;
  result.label = label_for_score(total);
  return result;
}

void validate_fusion_config(const FusionConfig& cfg) {
  if (cfg.alpha < 0 || cfg.beta < 0 || cfg.alpha + cfg.beta <= 0) {
    throw ConfigError("fusion weights must be non-negative with alpha+beta>0");
  }
}

FusedAssessment fuse_scores(const ScaleResult& manual,
                            const RiskPrediction& pred,
                            const FusionConfig& cfg) {
  validate_fusion_config(cfg);
  if (manual.missing || !manual.total.has_value()) {
    throw MissingManualScore("manual scale score missing; case excluded from fusion");
  }

  FusedAssessment fused;
  fused.manual_total = *manual.total;
  fused.llm_score = pred.score;
  fused.combined = cfg.alpha * fused.manual_total + cfg.beta * fused.llm_score;
  fused.label = fused.combined >= cfg.threshold ? RiskLabel::HighRisk
                                                : RiskLabel::LowModerate;
  return fused;
}

}  // namespace hotline
