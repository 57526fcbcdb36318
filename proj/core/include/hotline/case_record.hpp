#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hotline/domain.hpp"
#include "hotline/scale.hpp"

namespace hotline {

/// One hotline call: transcript, optional manual scale record, optional
/// follow-up outcome, free-form metadata. Metadata is never read by the
/// prediction logic.
struct CaseRecord {
  std::string case_id;
  TranscriptDocument transcript;
  std::optional<ManualScaleRecord> scale;
  std::optional<FollowUpOutcome> outcome;
  std::map<std::string, std::string> meta;

  bool operator==(const CaseRecord&) const = default;
};

struct ValidationFinding {
  std::string field;
  std::string rule;

  bool operator==(const ValidationFinding&) const = default;
};

/// Checks the type invariants of a single case. Returns one finding per
/// violation; an empty list means the record is well formed. An absent
/// outcome is fine here: it only disqualifies the case from evaluation.
std::vector<ValidationFinding> validate_case(const CaseRecord& record);

}  // namespace hotline
