#include "hotline/case_record.hpp"

#include <algorithm>

namespace hotline {

std::vector<ValidationFinding> validate_case(const CaseRecord& record) {
  std::vector<ValidationFinding> findings;
  auto add = [&](std::string field, std::string rule) {
    findings.push_back({std::move(field), std::move(rule)});
  };

  if (record.case_id.empty()) {
    add("case_id", "case_id empty");
  }
  if (record.transcript.text.empty()) {
    add("transcript.text", "transcript.text empty");
  }
  if (join_utterances(record.transcript.utterances,
                      record.transcript.separator) != record.transcript.text) {
    add("transcript", "utterance/text mismatch");
  }

  if (record.scale.has_value()) {
    for (ScaleElement e : scale_elements()) {
      const auto& a = record.scale->answer(e);
      if (!a.has_value()) continue;
      auto allowed = permitted_scores(e);
      if (std::find(allowed.begin(), allowed.end(), *a) == allowed.end()) {
        add("scale." + element_key(e),
            "answer " + std::to_string(*a) + " outside permitted set");
      }
    }
  }

  if (record.outcome.has_value()) {
    if (record.outcome->schedule_points_reached < 0 ||
        record.outcome->schedule_points_reached > 4) {
      add("outcome.schedule_points_reached", "must be in [0,4]");
    }
  }

  return findings;
}

}  // namespace hotline
