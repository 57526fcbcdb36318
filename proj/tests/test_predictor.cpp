#include <doctest.h>

#include <fstream>
#include <memory>
#include <random>

#include "hotline/errors.hpp"
#include "hotline/llm/lexicon.hpp"
#include "hotline/llm/mock_backend.hpp"
#include "hotline/predictor.hpp"
#include "hotline/scale.hpp"
#include "support.hpp"

using namespace hotline;

namespace {

CaseSummaryStream stream_with(std::vector<std::string> entry_texts,
                              std::string final_summary) {
  CaseSummaryStream stream;
  for (std::size_t i = 0; i < entry_texts.size(); ++i) {
    SegmentSummary s;
    s.segment_index = static_cast<int>(i);
    s.text = std::move(entry_texts[i]);
    s.importance = 5;
    s.created_at = static_cast<int>(i);
    s.last_access = static_cast<int>(i);
    stream.entries.push_back(std::move(s));
  }
  stream.final_summary = std::move(final_summary);
  return stream;
}

}  // namespace

TEST_SUITE("predictor") {

TEST_CASE("zero-shot prompt lists all 12 element names") {
  const auto stream = stream_with({"第一段"}, "总结");
  const auto request = build_zero_shot_prompt(stream);
  for (ScaleElement e : scale_elements()) {
    CHECK(request.user_prompt.find(element_name(e)) != std::string::npos);
  }
  CHECK(request.system_prompt.find("[task:predict]") != std::string::npos);
}

TEST_CASE("zero-shot prompt requires a final summary") {
  const auto stream = stream_with({"第一段"}, "");
  CHECK_THROWS_AS(build_zero_shot_prompt(stream), MissingSummary);
}

TEST_CASE("entry summaries appear in index order") {
  const auto stream = stream_with({"AAA甲", "BBB乙", "CCC丙"}, "总结");
  const auto request = build_zero_shot_prompt(stream);
  const auto a = request.user_prompt.find("AAA甲");
  const auto b = request.user_prompt.find("BBB乙");
  const auto c = request.user_prompt.find("CCC丙");
  REQUIRE(a != std::string::npos);
  REQUIRE(b != std::string::npos);
  REQUIRE(c != std::string::npos);
  CHECK(a < b);
  CHECK(b < c);
}

TEST_CASE("entry summaries can be omitted by config") {
  const auto stream = stream_with({"AAA甲"}, "总结");
  PredictConfig cfg;
  cfg.include_entry_summaries = false;
  const auto request = build_zero_shot_prompt(stream, {}, cfg);
  CHECK(request.user_prompt.find("AAA甲") == std::string::npos);
  CHECK(request.user_prompt.find("总结") != std::string::npos);
}

TEST_CASE("few-shot prompt renders six exemplar blocks before the query") {
  const auto stream = stream_with({"第一段"}, "本案总结XYZ");
  const auto request = build_few_shot_prompt(stream, default_exemplar_set());

  std::size_t blocks = 0;
  std::size_t pos = 0;
  std::size_t last_block = 0;
  while ((pos = request.user_prompt.find("Case summary:", pos)) !=
         std::string::npos) {
    ++blocks;
    last_block = pos;
    ++pos;
  }
  CHECK(blocks == 6);
  CHECK(last_block < request.user_prompt.find("本案总结XYZ"));
}

TEST_CASE("exemplar blocks alternate positive/negative") {
  const auto stream = stream_with({"第一段"}, "总结");
  const auto request = build_few_shot_prompt(stream, default_exemplar_set());
  // Labels in rendering order: high/low alternating, 3 + 3.
  std::vector<std::string> labels;
  std::size_t pos = 0;
  while ((pos = request.user_prompt.find("\"risk_label\":", pos)) !=
         std::string::npos) {
    const std::size_t start = request.user_prompt.find('"', pos + 13);
    const std::size_t end = request.user_prompt.find('"', start + 1);
    labels.push_back(request.user_prompt.substr(start + 1, end - start - 1));
    pos = end;
  }
  REQUIRE(labels.size() >= 6);
  for (std::size_t i = 0; i + 1 < 6; i += 2) {
    CHECK(labels[i] == "high");
    CHECK(labels[i + 1] == "low-moderate");
  }
}

TEST_CASE("unbalanced exemplar sets are rejected") {
  ExemplarSet bad;
  for (int i = 0; i < 4; ++i) bad.exemplars.push_back({"s", true, 10});
  for (int i = 0; i < 2; ++i) bad.exemplars.push_back({"s", false, 2});
  const auto stream = stream_with({"第一段"}, "总结");
  CHECK_THROWS_AS(build_few_shot_prompt(stream, bad), BadExemplarSet);
}

TEST_CASE("each rendered exemplar parses back to its label and score") {
  for (const auto& exemplar : default_exemplar_set().exemplars) {
    RiskPrediction p;
    p.score = exemplar.score;
    p.label = label_for_score(exemplar.score);
    const auto parsed = parse_prediction(render_prediction_json(p));
    CHECK(parsed.prediction.score == exemplar.score);
    CHECK(parsed.prediction.label == label_for_score(exemplar.score));
  }
}

TEST_CASE("direct parse of a well-formed object") {
  const auto outcome = parse_prediction(
      R"({"risk_score": 12, "risk_label": "high", )"
      R"("key_factors": ["suicidal ideation and plan"], "rationale": "..."})");
  CHECK(outcome.prediction.score == 12);
  CHECK(outcome.prediction.label == RiskLabel::HighRisk);
  CHECK(outcome.prediction.key_factors ==
        std::vector<std::string>{"suicidal ideation and plan"});
  CHECK(outcome.warnings.empty());
}

TEST_CASE("score wins over a disagreeing label, with a warning") {
  const auto outcome =
      parse_prediction(R"({"risk_score": 6, "risk_label": "high"})");
  CHECK(outcome.prediction.score == 6);
  CHECK(outcome.prediction.label == RiskLabel::LowModerate);
  REQUIRE(!outcome.warnings.empty());
  CHECK(outcome.warnings[0].find("disagrees") != std::string::npos);
}

TEST_CASE("prose and code fences around the object are tolerated") {
  const auto outcome = parse_prediction(
      "Sure, here is the assessment:\n```json\n"
      R"({"risk_score": 9, "risk_label": "high", "key_factors": ["x"]})"
      "\n```\nLet me know.");
  CHECK(outcome.prediction.score == 9);
}

TEST_CASE("out-of-range score in a fenced object raises ScoreOutOfRange") {
  CHECK_THROWS_AS(
      parse_prediction("prose\n```json\n{\"risk_score\": 17}\n```"),
      ScoreOutOfRange);
}

TEST_CASE("plain prose raises UnparseableResponse") {
  CHECK_THROWS_AS(parse_prediction("I think the risk is high."),
                  UnparseableResponse);
  CHECK_THROWS_AS(parse_prediction(""), UnparseableResponse);
  CHECK_THROWS_AS(parse_prediction("{\"other\": 1} no risk object"),
                  UnparseableResponse);
}

TEST_CASE("absent key_factors becomes an empty list") {
  const auto outcome = parse_prediction(R"({"risk_score": 3})");
  CHECK(outcome.prediction.key_factors.empty());
  CHECK(outcome.prediction.rationale.empty());
}

TEST_CASE("property: parse inverts render for random valid predictions") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> factor_pool = {
      "Suicidal ideation and plan", "Hopelessness", "Acute life events",
      "Severe depression", "中文因素"};
  for (int round = 0; round < 500; ++round) {
    RiskPrediction p;
    p.score = static_cast<int>(rng() % 17);
    p.label = label_for_score(p.score);
    const std::size_t n_factors =
        (p.label == RiskLabel::HighRisk ? 1 : 0) + rng() % 3;
    for (std::size_t i = 0; i < n_factors; ++i) {
      p.key_factors.push_back(factor_pool[rng() % factor_pool.size()]);
    }
    p.rationale = "reason \"quoted\" / 理由 " + std::to_string(rng() % 1000);

    const auto parsed = parse_prediction(render_prediction_json(p));
    CHECK(parsed.prediction.score == p.score);
    CHECK(parsed.prediction.label == p.label);
    CHECK(parsed.prediction.key_factors == p.key_factors);
    CHECK(parsed.prediction.rationale == p.rationale);
    CHECK(parsed.warnings.empty());
  }
}

TEST_CASE("mock prediction end to end: tags summing to 9 give high risk") {
  llm::Gateway gateway(std::make_shared<llm::MockBackend>(), 2);
  const std::string tags =
      llm::factor_tag(ScaleElement::SuicidalIdeationAndPlan) +   // 4
      llm::factor_tag(ScaleElement::AcuteLifeEvents) +           // 2
      llm::factor_tag(ScaleElement::SevereDepression) +          // 1
      llm::factor_tag(ScaleElement::Hopelessness) +              // 1
      llm::factor_tag(ScaleElement::SuicideAttemptHistory);      // 1
  const auto stream = stream_with({"第一段 " + tags}, "总结 " + tags);

  const auto prediction =
      predict_case(stream, gateway, PredictionMode::ZeroShot);
  CHECK(prediction.score == 9);
  CHECK(prediction.label == RiskLabel::HighRisk);
  CHECK(!prediction.key_factors.empty());
  CHECK(prediction.mode == PredictionMode::ZeroShot);
  CHECK(!prediction.raw_response.empty());
}

TEST_CASE("mock prediction of a tag-free stream is 0 / low-moderate") {
  llm::Gateway gateway(std::make_shared<llm::MockBackend>(), 2);
  const auto stream = stream_with({"平静的一段"}, "平静的总结");
  const auto prediction =
      predict_case(stream, gateway, PredictionMode::FewShot);
  CHECK(prediction.score == 0);
  CHECK(prediction.label == RiskLabel::LowModerate);
  CHECK(prediction.mode == PredictionMode::FewShot);
}

TEST_CASE("one format-reminder retry absorbs a prose first reply") {
  auto scripted = std::make_shared<test::ScriptedBackend>(
      std::vector<std::string>{"I think this case is serious.",
                               R"({"risk_score": 10, "key_factors": ["k"]})"});
  auto recording = std::make_shared<test::RecordingBackend>(scripted);
  llm::Gateway gateway(recording, 1);

  const auto stream = stream_with({"第一段"}, "总结");
  const auto prediction =
      predict_case(stream, gateway, PredictionMode::ZeroShot);
  CHECK(prediction.score == 10);

  const auto requests = recording->requests();
  REQUIRE(requests.size() == 2);
  CHECK(requests[1].user_prompt.find("Reminder:") != std::string::npos);
}

TEST_CASE("prose twice raises UnparseableResponse with attempt evidence") {
  auto scripted = std::make_shared<test::ScriptedBackend>(
      std::vector<std::string>{"prose one", "prose two"});
  llm::Gateway gateway(scripted, 1);

  const auto stream = stream_with({"第一段"}, "总结");
  try {
    predict_case(stream, gateway, PredictionMode::ZeroShot);
    FAIL("expected UnparseableResponse");
  } catch (const UnparseableResponse& e) {
    const std::string what = e.what();
    CHECK(what.find("prose one") != std::string::npos);
    CHECK(what.find("prose two") != std::string::npos);
  }
  CHECK(scripted->calls() == 2);
}

TEST_CASE("no unredacted names or phones reach the outbound prompt") {
  auto inner = std::make_shared<llm::MockBackend>();
  auto recording = std::make_shared<test::RecordingBackend>(inner);
  llm::Gateway gateway(recording, 1, llm::Redactor({"张伟", "李娜"}, {}));

  const auto stream = stream_with(
      {"张伟说他的电话是13812345678，最近状态不好"},
      "caller 张伟, contact 13812345678, 整体风险偏低");
  predict_case(stream, gateway, PredictionMode::ZeroShot);

  for (const auto& request : recording->requests()) {
    CHECK(request.user_prompt.find("张伟") == std::string::npos);
    CHECK(request.user_prompt.find("13812345678") == std::string::npos);
    CHECK(request.user_prompt.find("[NAME]") != std::string::npos);
    CHECK(request.user_prompt.find("[PHONE]") != std::string::npos);
  }
}

TEST_CASE("exemplar files load and validate") {
  const std::string path = "/tmp/hotline_test_exemplars.jsonl";
  {
    std::ofstream out(path, std::ios::trunc);
    out << R"({"summary": "s1", "outcome": "positive", "score": 12})" << "\n";
    out << R"({"summary": "s2", "outcome": "positive", "score": 9})" << "\n";
    out << R"({"summary": "s3", "outcome": "positive", "score": 8})" << "\n";
    out << R"({"summary": "s4", "outcome": "negative", "score": 2})" << "\n";
    out << R"({"summary": "s5", "outcome": "negative", "score": 0})" << "\n";
    out << R"({"summary": "s6", "outcome": "negative", "score": 5})" << "\n";
  }
  const auto set = load_exemplars(path);
  CHECK(set.exemplars.size() == 6);
  CHECK(set.positive_count() == 3);
  CHECK_NOTHROW(validate_exemplar_set(set));

  {
    std::ofstream out(path, std::ios::trunc);
    out << R"({"summary": "s1", "outcome": "maybe", "score": 12})" << "\n";
  }
  CHECK_THROWS_AS(load_exemplars(path), ConfigError);
}

}  // TEST_SUITE
