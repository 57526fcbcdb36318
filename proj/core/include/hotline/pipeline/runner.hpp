#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hotline/case_record.hpp"
#include "hotline/evaluation.hpp"
#include "hotline/llm/gateway.hpp"
#include "hotline/pipeline/config.hpp"
#include "hotline/pipeline/io.hpp"
#include "hotline/predictor.hpp"

namespace hotline::pipeline {

/// Builds the configured backend (mock lexicon or HTTP) behind a gateway
/// with the configured in-flight limit and redaction lists.
std::unique_ptr<llm::Gateway> make_gateway(const PipelineConfig& cfg);

/// Exemplar set from the configured path, or the built-in default.
ExemplarSet resolve_exemplars(const PipelineConfig& cfg);

struct RunOutputs {
  std::vector<StreamRecord> streams;          // input order
  std::vector<PredictionRecord> predictions;  // input order
  std::optional<eval::MetricReport> report;   // absent without confirmed outcomes
  int confirmed_cases = 0;
};

/// Full chain: summarize and predict every case (worker pool bounded by
/// concurrency.max_in_flight, outputs in input order), then evaluate the
/// confirmed-outcome cases in the requested mode. Throws the first per-case
/// error in input order.
RunOutputs run_pipeline(const std::vector<CaseRecord>& cases,
                        const PipelineConfig& cfg, llm::Gateway& gateway,
                        eval::EvalMode mode);

/// Summarize-only step used by the `summarize` subcommand.
std::vector<StreamRecord> summarize_cases(const std::vector<CaseRecord>& cases,
                                          const PipelineConfig& cfg,
                                          llm::Gateway& gateway);

/// Predict-only step over previously produced streams.
std::vector<PredictionRecord> predict_streams(
    const std::vector<StreamRecord>& streams, const PipelineConfig& cfg,
    llm::Gateway& gateway);

/// Assembles evaluation inputs from cases and predictions, keeping only
/// confirmed outcomes. Throws ValidationError for a prediction-less case
/// when predictions are required.
std::vector<eval::EvalCase> assemble_eval_cases(
    const std::vector<CaseRecord>& cases,
    const std::vector<PredictionRecord>& predictions, eval::EvalMode mode);

}  // namespace hotline::pipeline
