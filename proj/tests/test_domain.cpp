#include <doctest.h>

#include "hotline/case_record.hpp"
#include "hotline/domain.hpp"
#include "hotline/errors.hpp"

using namespace hotline;

namespace {

CaseRecord sample_case() {
  CaseRecord record;
  record.case_id = "c1";
  record.transcript = make_transcript({{Speaker::Operator, "您好"},
                                       {Speaker::Caller, "我睡不着"}});
  return record;
}

}  // namespace

TEST_SUITE("domain") {

TEST_CASE("make_transcript joins utterances with the separator") {
  const auto doc = make_transcript({{Speaker::Caller, "a"},
                                    {Speaker::Operator, "b"},
                                    {Speaker::Unknown, "c"}});
  CHECK(doc.text == "a\nb\nc");
  CHECK(join_utterances(doc.utterances, doc.separator) == doc.text);

  const auto glued = make_transcript({{Speaker::Caller, "a"},
                                      {Speaker::Caller, "b"}},
                                     "");
  CHECK(glued.text == "ab");
}

TEST_CASE("label_for_score splits at 8") {
  CHECK(label_for_score(7) == RiskLabel::LowModerate);
  CHECK(label_for_score(8) == RiskLabel::HighRisk);
  CHECK(label_for_score(0) == RiskLabel::LowModerate);
  CHECK(label_for_score(16) == RiskLabel::HighRisk);
}

TEST_CASE("validate_case accepts a well-formed record") {
  CHECK(validate_case(sample_case()).empty());
}

TEST_CASE("validate_case flags empty transcript") {
  CaseRecord record;
  record.case_id = "c1";
  auto findings = validate_case(record);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].rule == "transcript.text empty");
}

TEST_CASE("outcome is optional outside evaluation") {
  auto record = sample_case();
  record.outcome.reset();
  CHECK(validate_case(record).empty());
}

TEST_CASE("validate_case flags utterance/text mismatch") {
  auto record = sample_case();
  record.transcript.text += "x";  // desynchronize
  auto findings = validate_case(record);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].rule == "utterance/text mismatch");
}

TEST_CASE("validate_case flags bad scale answers and outcome range") {
  auto record = sample_case();
  ManualScaleRecord scale;
  scale.answer(ScaleElement::SuicidalIdeationAndPlan) = 2;  // only 0/1/4
  record.scale = scale;
  record.outcome = FollowUpOutcome{false, FollowUpStatus::Confirmed, 5};
  auto findings = validate_case(record);
  CHECK(findings.size() == 2);
}

TEST_CASE("enum round trips") {
  for (auto s : {Speaker::Operator, Speaker::Caller, Speaker::Unknown}) {
    CHECK(speaker_from_string(to_string(s)) == s);
  }
  for (auto l : {RiskLabel::HighRisk, RiskLabel::LowModerate}) {
    CHECK(risk_label_from_string(to_string(l)) == l);
  }
  for (auto m : {PredictionMode::ZeroShot, PredictionMode::FewShot}) {
    CHECK(prediction_mode_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(speaker_from_string("nobody"), ValidationError);
}

}  // TEST_SUITE
