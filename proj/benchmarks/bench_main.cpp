#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "hotline/chunker.hpp"
#include "hotline/evaluation.hpp"
#include "hotline/llm/mock_backend.hpp"
#include "hotline/llm/redaction.hpp"
#include "hotline/memory.hpp"
#include "hotline/pipeline/corpus.hpp"

using namespace hotline;

namespace {

TranscriptDocument large_document() {
  std::vector<Utterance> utterances;
  for (int i = 0; i < 600; ++i) {
    utterances.push_back({i % 2 == 0 ? Speaker::Operator : Speaker::Caller,
                          "最近一段时间睡得不好，压力也很大，跟家里人说不上话。"});
  }
  return make_transcript(std::move(utterances));
}

void BM_SegmentTranscript(benchmark::State& state) {
  const auto doc = large_document();
  for (auto _ : state) {
    benchmark::DoNotOptimize(segment_transcript(doc, {}));
  }
}
BENCHMARK(BM_SegmentTranscript);

void BM_Redact(benchmark::State& state) {
  llm::Redactor redactor({"张伟", "李娜", "王强"}, {"回龙观东大街"});
  std::string text;
  for (int i = 0; i < 50; ++i) {
    text += "张伟说他的电话是13812345678，住在回龙观东大街，编号110105199001010012。";
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(redactor.redact(text));
  }
}
BENCHMARK(BM_Redact);

void BM_RelevanceSimilarity(benchmark::State& state) {
  const std::string a(512, 'a');
  std::string b;
  for (int i = 0; i < 170; ++i) b += "你好吗";
  for (auto _ : state) {
    benchmark::DoNotOptimize(relevance_similarity(a, b));
  }
}
BENCHMARK(BM_RelevanceSimilarity);

void BM_BootstrapCi(benchmark::State& state) {
  std::vector<eval::LabeledOutcome> cases;
  for (int i = 0; i < 18; ++i) cases.emplace_back(RiskLabel::HighRisk, true);
  for (int i = 0; i < 10; ++i) cases.emplace_back(RiskLabel::HighRisk, false);
  for (int i = 0; i < 2; ++i) cases.emplace_back(RiskLabel::LowModerate, true);
  for (int i = 0; i < 16; ++i) cases.emplace_back(RiskLabel::LowModerate, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        eval::bootstrap_ci(cases, {static_cast<int>(state.range(0)), 7, 1}));
  }
}
BENCHMARK(BM_BootstrapCi)->Arg(500)->Arg(2000);

void BM_SummarizeCaseMock(benchmark::State& state) {
  const auto cases = pipeline::gen_corpus({7, 1, 1.0, 0.0});
  llm::Gateway gateway(std::make_shared<llm::MockBackend>(), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(summarize_case(cases[0].transcript, gateway));
  }
}
BENCHMARK(BM_SummarizeCaseMock);

}  // namespace

BENCHMARK_MAIN();
