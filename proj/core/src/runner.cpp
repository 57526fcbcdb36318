#include "hotline/pipeline/runner.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <thread>

#include "hotline/errors.hpp"
#include "hotline/llm/http_backend.hpp"
#include "hotline/llm/mock_backend.hpp"
#include "hotline/memory.hpp"

namespace hotline::pipeline {

namespace {

// Runs fn(i) for i in [0,n) on up to `workers` threads; the first exception
// in index order is rethrown after all threads join.
void parallel_for(int n, int workers,
                  const std::function<void(int)>& fn) {
  const int pool_size = std::max(1, std::min(workers, n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};

  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };

  if (pool_size == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(pool_size));
    for (int t = 0; t < pool_size; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }

  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

void require_valid(const std::vector<CaseRecord>& cases) {
  for (const auto& c : cases) {
    const auto findings = validate_case(c);
    if (!findings.empty()) {
      std::string msg = "case " + c.case_id + " invalid:";
      for (const auto& f : findings) msg += " [" + f.field + ": " + f.rule + "]";
      throw ValidationError(msg);
    }
  }
}

}  // namespace

std::unique_ptr<llm::Gateway> make_gateway(const PipelineConfig& cfg) {
  std::shared_ptr<llm::ChatBackend> backend;
  if (cfg.backend.kind == "http") {
    llm::HttpBackendConfig http;
    http.base_url = cfg.backend.base_url;
    http.model = cfg.backend.model;
    http.max_retries = cfg.backend.max_retries;
    http.timeout_ms = cfg.backend.timeout_ms;
    http.backoff_ms = cfg.backend.backoff_ms;
    backend = std::make_shared<llm::HttpBackend>(http);
  } else {
    backend = std::make_shared<llm::MockBackend>();
  }
  return std::make_unique<llm::Gateway>(
      std::move(backend), cfg.concurrency.max_in_flight,
      llm::Redactor::from_files(cfg.redaction.name_list_path,
                                cfg.redaction.address_list_path),
      cfg.backend.temperature);
}

ExemplarSet resolve_exemplars(const PipelineConfig& cfg) {
  if (!cfg.predict.exemplars_path.empty()) {
    return load_exemplars(cfg.predict.exemplars_path);
  }
  return default_exemplar_set();
}

std::vector<StreamRecord> summarize_cases(const std::vector<CaseRecord>& cases,
                                          const PipelineConfig& cfg,
                                          llm::Gateway& gateway) {
  require_valid(cases);
  const PromptTemplates prompts = resolve_prompts(cfg);
  std::vector<StreamRecord> streams(cases.size());
  parallel_for(static_cast<int>(cases.size()), cfg.concurrency.max_in_flight,
               [&](int i) {
                 const auto idx = static_cast<std::size_t>(i);
                 streams[idx].case_id = cases[idx].case_id;
                 streams[idx].stream =
                     summarize_case(cases[idx].transcript, gateway, cfg.chunk,
                                    cfg.memory, prompts);
               });
  return streams;
}

std::vector<PredictionRecord> predict_streams(
    const std::vector<StreamRecord>& streams, const PipelineConfig& cfg,
    llm::Gateway& gateway) {
  const PromptTemplates prompts = resolve_prompts(cfg);
  PredictConfig predict_cfg;
  predict_cfg.include_entry_summaries = cfg.predict.include_entry_summaries;
  const ExemplarSet exemplars = resolve_exemplars(cfg);

  std::vector<PredictionRecord> predictions(streams.size());
  parallel_for(static_cast<int>(streams.size()), cfg.concurrency.max_in_flight,
               [&](int i) {
                 const auto idx = static_cast<std::size_t>(i);
                 predictions[idx].case_id = streams[idx].case_id;
                 predictions[idx].prediction =
                     predict_case(streams[idx].stream, gateway,
                                  cfg.predict.mode, &exemplars, prompts,
                                  predict_cfg);
               });
  return predictions;
}

std::vector<eval::EvalCase> assemble_eval_cases(
    const std::vector<CaseRecord>& cases,
    const std::vector<PredictionRecord>& predictions, eval::EvalMode mode) {
  std::map<std::string, const RiskPrediction*> by_id;
  for (const auto& p : predictions) by_id[p.case_id] = &p.prediction;

  std::vector<eval::EvalCase> out;
  for (const auto& c : cases) {
    if (!c.outcome || c.outcome->status != FollowUpStatus::Confirmed) continue;
    eval::EvalCase ec;
    ec.case_id = c.case_id;
    ec.scale = c.scale;
    ec.outcome = *c.outcome;
    if (auto it = by_id.find(c.case_id); it != by_id.end()) {
      ec.prediction = *it->second;
    } else if (mode != eval::EvalMode::ManualOnly) {
      throw ValidationError("case " + c.case_id + " has no prediction");
    }
    out.push_back(std::move(ec));
  }
  return out;
}

RunOutputs run_pipeline(const std::vector<CaseRecord>& cases,
                        const PipelineConfig& cfg, llm::Gateway& gateway,
                        eval::EvalMode mode) {
  RunOutputs outputs;
  outputs.streams = summarize_cases(cases, cfg, gateway);
  outputs.predictions = predict_streams(outputs.streams, cfg, gateway);

  const auto eval_cases = assemble_eval_cases(cases, outputs.predictions, mode);
  outputs.confirmed_cases = static_cast<int>(eval_cases.size());
  if (!eval_cases.empty()) {
    eval::BootstrapConfig bootstrap;
    bootstrap.resamples = cfg.bootstrap.resamples;
    bootstrap.seed = cfg.bootstrap.seed;
    outputs.report = eval::evaluate_run(eval_cases, mode, cfg.fusion, bootstrap);
  }
  return outputs;
}

}  // namespace hotline::pipeline
