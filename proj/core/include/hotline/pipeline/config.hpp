#pragma once

#include <cstdint>
#include <string>

#include "hotline/chunker.hpp"
#include "hotline/memory.hpp"
#include "hotline/scale.hpp"

namespace hotline::pipeline {

/// Whole-pipeline configuration. Loaded from a single JSON document whose
/// keys mirror the dotted names below; unknown keys are rejected by name.
struct PipelineConfig {
  ChunkConfig chunk;    // chunk.segment_budget_chars, chunk.include_operator_utterances
  MemoryConfig memory;  // memory.*, chunk.summary_budget_chars

  struct Backend {
    std::string kind = "mock";  // "mock" | "http"
    std::string base_url;
    std::string model;
    double temperature = 0.0;
    int max_retries = 3;
    int timeout_ms = 60000;
    int backoff_ms = 250;
  } backend;

  struct Redaction {
    std::string name_list_path;
    std::string address_list_path;
  } redaction;

  struct Prompts {
    std::string summarize_path;
    std::string importance_path;
    std::string zero_shot_path;
    std::string few_shot_path;
  } prompts;

  struct Predict {
    PredictionMode mode = PredictionMode::ZeroShot;
    std::string exemplars_path;
    bool include_entry_summaries = true;
  } predict;

  FusionConfig fusion;

  struct Bootstrap {
    int resamples = 2000;
    std::uint64_t seed = 7;
  } bootstrap;

  struct Concurrency {
    int max_in_flight = 4;
  } concurrency;

  struct Io {
    std::string output_dir = "out";
  } io;

  struct Corpus {
    std::uint64_t seed = 7;
    int n_cases = 50;
    double positive_fraction = 0.4;
    double missing_scale_fraction = 0.2;
  } corpus;
};

/// Parses and validates a config document. Unknown keys fail with their
/// dotted names listed; out-of-range values fail with the offending key.
PipelineConfig parse_config_text(const std::string& json_text);

PipelineConfig load_config_file(const std::string& path);

/// Prompt templates with any configured file overrides applied.
PromptTemplates resolve_prompts(const PipelineConfig& cfg);

}  // namespace hotline::pipeline
