#include "hotline/pipeline/config.hpp"

#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include "hotline/errors.hpp"
#include "hotline/prompts.hpp"

namespace hotline::pipeline {

namespace {

using nlohmann::json;

using Setter = std::function<void(PipelineConfig&, const json&)>;

template <typename T>
T checked(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key " + key + " has the wrong type");
  }
}

const std::map<std::string, Setter>& key_table() {
  static const std::map<std::string, Setter> table = {
      {"chunk.segment_budget_chars",
       [](PipelineConfig& c, const json& v) {
         c.chunk.segment_budget_chars =
             checked<std::size_t>(v, "chunk.segment_budget_chars");
       }},
      {"chunk.include_operator_utterances",
       [](PipelineConfig& c, const json& v) {
         c.chunk.include_operator_utterances =
             checked<bool>(v, "chunk.include_operator_utterances");
       }},
      {"chunk.summary_budget_chars",
       [](PipelineConfig& c, const json& v) {
         c.memory.summary_budget_chars =
             checked<std::size_t>(v, "chunk.summary_budget_chars");
       }},
      {"memory.top_k",
       [](PipelineConfig& c, const json& v) {
         c.memory.top_k = checked<int>(v, "memory.top_k");
       }},
      {"memory.weights.recency",
       [](PipelineConfig& c, const json& v) {
         c.memory.recency_weight = checked<double>(v, "memory.weights.recency");
       }},
      {"memory.weights.importance",
       [](PipelineConfig& c, const json& v) {
         c.memory.importance_weight =
             checked<double>(v, "memory.weights.importance");
       }},
      {"memory.weights.relevance",
       [](PipelineConfig& c, const json& v) {
         c.memory.relevance_weight =
             checked<double>(v, "memory.weights.relevance");
       }},
      {"memory.recency_decay",
       [](PipelineConfig& c, const json& v) {
         c.memory.recency_decay = checked<double>(v, "memory.recency_decay");
       }},
      {"backend.kind",
       [](PipelineConfig& c, const json& v) {
         c.backend.kind = checked<std::string>(v, "backend.kind");
         if (c.backend.kind != "mock" && c.backend.kind != "http") {
           throw ConfigError("backend.kind must be \"mock\" or \"http\"");
         }
       }},
      {"backend.base_url",
       [](PipelineConfig& c, const json& v) {
         c.backend.base_url = checked<std::string>(v, "backend.base_url");
       }},
      {"backend.model",
       [](PipelineConfig& c, const json& v) {
         c.backend.model = checked<std::string>(v, "backend.model");
       }},
      {"backend.temperature",
       [](PipelineConfig& c, const json& v) {
         c.backend.temperature = checked<double>(v, "backend.temperature");
         if (c.backend.temperature < 0 || c.backend.temperature > 2) {
           throw ConfigError("backend.temperature must be in [0,2]");
         }
       }},
      {"backend.max_retries",
       [](PipelineConfig& c, const json& v) {
         c.backend.max_retries = checked<int>(v, "backend.max_retries");
         if (c.backend.max_retries < 0) {
           throw ConfigError("backend.max_retries must be >= 0");
         }
       }},
      {"backend.timeout_ms",
       [](PipelineConfig& c, const json& v) {
         c.backend.timeout_ms = checked<int>(v, "backend.timeout_ms");
         if (c.backend.timeout_ms < 1) {
           throw ConfigError("backend.timeout_ms must be >= 1");
         }
       }},
      {"backend.backoff_ms",
       [](PipelineConfig& c, const json& v) {
         c.backend.backoff_ms = checked<int>(v, "backend.backoff_ms");
         if (c.backend.backoff_ms < 0) {
           throw ConfigError("backend.backoff_ms must be >= 0");
         }
       }},
      {"redaction.name_list_path",
       [](PipelineConfig& c, const json& v) {
         c.redaction.name_list_path =
             checked<std::string>(v, "redaction.name_list_path");
       }},
      {"redaction.address_list_path",
       [](PipelineConfig& c, const json& v) {
         c.redaction.address_list_path =
             checked<std::string>(v, "redaction.address_list_path");
       }},
      {"prompts.summarize_path",
       [](PipelineConfig& c, const json& v) {
         c.prompts.summarize_path =
             checked<std::string>(v, "prompts.summarize_path");
       }},
      {"prompts.importance_path",
       [](PipelineConfig& c, const json& v) {
         c.prompts.importance_path =
             checked<std::string>(v, "prompts.importance_path");
       }},
      {"prompts.zero_shot_path",
       [](PipelineConfig& c, const json& v) {
         c.prompts.zero_shot_path =
             checked<std::string>(v, "prompts.zero_shot_path");
       }},
      {"prompts.few_shot_path",
       [](PipelineConfig& c, const json& v) {
         c.prompts.few_shot_path =
             checked<std::string>(v, "prompts.few_shot_path");
       }},
      {"predict.mode",
       [](PipelineConfig& c, const json& v) {
         c.predict.mode = prediction_mode_from_string(
             checked<std::string>(v, "predict.mode"));
       }},
      {"predict.exemplars_path",
       [](PipelineConfig& c, const json& v) {
         c.predict.exemplars_path =
             checked<std::string>(v, "predict.exemplars_path");
       }},
      {"predict.include_entry_summaries",
       [](PipelineConfig& c, const json& v) {
         c.predict.include_entry_summaries =
             checked<bool>(v, "predict.include_entry_summaries");
       }},
      {"fusion.alpha",
       [](PipelineConfig& c, const json& v) {
         c.fusion.alpha = checked<double>(v, "fusion.alpha");
       }},
      {"fusion.beta",
       [](PipelineConfig& c, const json& v) {
         c.fusion.beta = checked<double>(v, "fusion.beta");
       }},
      {"fusion.threshold",
       [](PipelineConfig& c, const json& v) {
         c.fusion.threshold = checked<double>(v, "fusion.threshold");
       }},
      {"bootstrap.resamples",
       [](PipelineConfig& c, const json& v) {
         c.bootstrap.resamples = checked<int>(v, "bootstrap.resamples");
         if (c.bootstrap.resamples < 1) {
           throw ConfigError("bootstrap.resamples must be >= 1");
         }
       }},
      {"bootstrap.seed",
       [](PipelineConfig& c, const json& v) {
         c.bootstrap.seed = checked<std::uint64_t>(v, "bootstrap.seed");
       }},
      {"concurrency.max_in_flight",
       [](PipelineConfig& c, const json& v) {
         c.concurrency.max_in_flight =
             checked<int>(v, "concurrency.max_in_flight");
         if (c.concurrency.max_in_flight < 1) {
           throw ConfigError("concurrency.max_in_flight must be >= 1");
         }
       }},
      {"io.output_dir",
       [](PipelineConfig& c, const json& v) {
         c.io.output_dir = checked<std::string>(v, "io.output_dir");
       }},
      {"corpus.seed",
       [](PipelineConfig& c, const json& v) {
         c.corpus.seed = checked<std::uint64_t>(v, "corpus.seed");
       }},
      {"corpus.n_cases",
       [](PipelineConfig& c, const json& v) {
         c.corpus.n_cases = checked<int>(v, "corpus.n_cases");
         if (c.corpus.n_cases < 1) {
           throw ConfigError("corpus.n_cases must be >= 1");
         }
       }},
      {"corpus.positive_fraction",
       [](PipelineConfig& c, const json& v) {
         c.corpus.positive_fraction =
             checked<double>(v, "corpus.positive_fraction");
         if (c.corpus.positive_fraction < 0 || c.corpus.positive_fraction > 1) {
           throw ConfigError("corpus.positive_fraction must be in [0,1]");
         }
       }},
      {"corpus.missing_scale_fraction",
       [](PipelineConfig& c, const json& v) {
         c.corpus.missing_scale_fraction =
             checked<double>(v, "corpus.missing_scale_fraction");
         if (c.corpus.missing_scale_fraction < 0 ||
             c.corpus.missing_scale_fraction > 1) {
           throw ConfigError("corpus.missing_scale_fraction must be in [0,1]");
         }
       }},
  };
  return table;
}

void flatten(const json& node, const std::string& prefix,
             std::map<std::string, const json*>& leaves) {
  for (const auto& [key, value] : node.items()) {
    const std::string dotted = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, dotted, leaves);
    } else {
      leaves[dotted] = &value;
    }
  }
}

}  // namespace

PipelineConfig parse_config_text(const std::string& json_text) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ConfigError("config is not a JSON object");
  }

  std::map<std::string, const json*> leaves;
  flatten(doc, "", leaves);

  std::string unknown;
  for (const auto& [key, _] : leaves) {
    if (!key_table().count(key)) {
      if (!unknown.empty()) unknown += ", ";
      unknown += key;
    }
  }
  if (!unknown.empty()) {
    throw ConfigError("unknown config keys: " + unknown);
  }

  PipelineConfig cfg;
  for (const auto& [key, value] : leaves) {
    key_table().at(key)(cfg, *value);
  }

  if (cfg.chunk.segment_budget_chars < 1) {
    throw ConfigError("chunk.segment_budget_chars must be >= 1");
  }
  validate_memory_config(cfg.memory);
  validate_fusion_config(cfg.fusion);
  if (cfg.backend.kind == "http" && cfg.backend.base_url.empty()) {
    throw ConfigError("backend.kind \"http\" requires backend.base_url");
  }
  return cfg;
}

PipelineConfig load_config_file(const std::string& path) {
  return parse_config_text(load_text_file(path));
}

PromptTemplates resolve_prompts(const PipelineConfig& cfg) {
  PromptTemplates prompts;
  if (!cfg.prompts.summarize_path.empty()) {
    prompts.summarize = load_text_file(cfg.prompts.summarize_path);
  }
  if (!cfg.prompts.importance_path.empty()) {
    prompts.importance = load_text_file(cfg.prompts.importance_path);
  }
  if (!cfg.prompts.zero_shot_path.empty()) {
    prompts.zero_shot = load_text_file(cfg.prompts.zero_shot_path);
  }
  if (!cfg.prompts.few_shot_path.empty()) {
    prompts.few_shot = load_text_file(cfg.prompts.few_shot_path);
  }
  return prompts;
}

}  // namespace hotline::pipeline
