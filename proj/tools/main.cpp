// Command-line front end for the hotline risk pipeline.
//
// Exit codes: 0 success, 1 validation/config failure, 2 transport failure.
// Errors go to stderr as one machine-readable JSON record.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hotline/errors.hpp"
#include "hotline/evaluation.hpp"
#include "hotline/pipeline/config.hpp"
#include "hotline/pipeline/corpus.hpp"
#include "hotline/pipeline/io.hpp"
#include "hotline/pipeline/runner.hpp"
#include "hotline/scale.hpp"

namespace fs = std::filesystem;
using namespace hotline;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string input;
  std::string out;
  std::string mode;
  std::string eval_mode = "llm";
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
};

pipeline::PipelineConfig load_config(const CommonArgs& args) {
  pipeline::PipelineConfig cfg;
  if (!args.config_path.empty()) {
    cfg = pipeline::load_config_file(args.config_path);
  }
  if (args.seed) cfg.corpus.seed = *args.seed;
  if (args.n) cfg.corpus.n_cases = *args.n;
  if (!args.mode.empty()) {
    cfg.predict.mode = prediction_mode_from_string(args.mode);
  }
  return cfg;
}

std::string output_dir(const CommonArgs& args,
                       const pipeline::PipelineConfig& cfg) {
  const std::string dir = args.out.empty() ? cfg.io.output_dir : args.out;
  fs::create_directories(dir);
  return dir;
}

void emit_error(const std::string& kind, const std::string& message) {
  nlohmann::json record = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << record.dump() << std::endl;
}

void write_report_files(const std::string& dir,
                        const eval::MetricReport& report,
                        eval::EvalMode mode) {
  pipeline::write_report(dir + "/report.json", report, mode);
  const std::string table = eval::format_report_table(report);
  std::ofstream txt(dir + "/report.txt", std::ios::binary | std::ios::trunc);
  txt << table;
  std::cout << table;
}

int cmd_gen_corpus(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto cases = pipeline::gen_corpus(cfg.corpus);
  const std::string dir = output_dir(args, cfg);
  pipeline::write_cases(dir + "/cases.jsonl", cases);
  std::cout << "wrote " << cases.size() << " cases to " << dir
            << "/cases.jsonl\n";
  return 0;
}

int cmd_summarize(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto cases = pipeline::read_cases(args.input);
  auto gateway = pipeline::make_gateway(cfg);
  const auto streams = pipeline::summarize_cases(cases, cfg, *gateway);
  const std::string dir = output_dir(args, cfg);
  pipeline::write_streams(dir + "/streams.jsonl", streams);
  std::cout << "wrote " << streams.size() << " streams to " << dir
            << "/streams.jsonl\n";
  return 0;
}

int cmd_predict(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto streams = pipeline::read_streams(args.input);
  auto gateway = pipeline::make_gateway(cfg);
  const auto predictions = pipeline::predict_streams(streams, cfg, *gateway);
  const std::string dir = output_dir(args, cfg);
  pipeline::write_predictions(dir + "/predictions.jsonl", predictions);
  std::cout << "wrote " << predictions.size() << " predictions to " << dir
            << "/predictions.jsonl\n";
  return 0;
}

int cmd_assess(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto cases = pipeline::read_cases(args.input);
  const std::string dir = output_dir(args, cfg);

  std::vector<pipeline::PredictionRecord> predictions;
  const std::string predictions_path = dir + "/predictions.jsonl";
  if (fs::exists(predictions_path)) {
    predictions = pipeline::read_predictions(predictions_path);
  }
  std::map<std::string, const RiskPrediction*> by_id;
  for (const auto& p : predictions) by_id[p.case_id] = &p.prediction;

  std::ofstream out(dir + "/assessments.jsonl",
                    std::ios::binary | std::ios::trunc);
  int written = 0;
  for (const auto& c : cases) {
    if (!c.scale) continue;
    const ScaleResult result = score_scale(*c.scale);
    nlohmann::json record = {{"case_id", c.case_id},
                             {"missing", result.missing}};
    if (!result.missing) {
      record["total"] = *result.total;
      record["label"] = to_string(*result.label);
      if (auto it = by_id.find(c.case_id); it != by_id.end()) {
        const FusedAssessment fused =
            fuse_scores(result, *it->second, cfg.fusion);
        record["fused"] = {{"combined", fused.combined},
                           {"label", to_string(fused.label)},
                           {"manual_total", fused.manual_total},
                           {"llm_score", fused.llm_score}};
      }
    }
    out << record.dump() << '\n';
    ++written;
  }
  std::cout << "wrote " << written << " assessments to " << dir
            << "/assessments.jsonl\n";
  return 0;
}

int cmd_evaluate(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const eval::EvalMode mode = eval::eval_mode_from_string(args.eval_mode);

  const fs::path input(args.input);
  const fs::path cases_path =
      fs::is_directory(input) ? input / "cases.jsonl" : input;
  const fs::path predictions_path = cases_path.parent_path() / "predictions.jsonl";

  const auto cases = pipeline::read_cases(cases_path.string());
  std::vector<pipeline::PredictionRecord> predictions;
  if (fs::exists(predictions_path)) {
    predictions = pipeline::read_predictions(predictions_path.string());
  }

  const auto eval_cases = pipeline::assemble_eval_cases(cases, predictions, mode);
  if (eval_cases.empty()) {
    throw EmptyRun("no cases with confirmed outcomes");
  }

  eval::BootstrapConfig bootstrap{cfg.bootstrap.resamples, cfg.bootstrap.seed};
  const auto report = eval::evaluate_run(eval_cases, mode, cfg.fusion, bootstrap);

  const std::string dir =
      args.out.empty() ? cases_path.parent_path().string() : args.out;
  fs::create_directories(dir);
  write_report_files(dir, report, mode);
  return 0;
}

int cmd_run(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const eval::EvalMode mode = eval::eval_mode_from_string(args.eval_mode);
  const auto cases = pipeline::read_cases(args.input);
  auto gateway = pipeline::make_gateway(cfg);

  const auto outputs = pipeline::run_pipeline(cases, cfg, *gateway, mode);

  const std::string dir = output_dir(args, cfg);
  pipeline::write_streams(dir + "/streams.jsonl", outputs.streams);
  pipeline::write_predictions(dir + "/predictions.jsonl", outputs.predictions);
  if (outputs.report) {
    write_report_files(dir, *outputs.report, mode);
  } else {
    emit_error("NoConfirmedOutcomes",
               "no case has a confirmed outcome; report skipped");
  }
  std::cout << "processed " << cases.size() << " cases into " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suicide risk assessment pipeline for hotline transcripts"};
  app.require_subcommand(1);

  CommonArgs args;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    cmd->add_option("--config", args.config_path, "Config file (JSON)");
    auto* input = cmd->add_option("--input", args.input, "Input path");
    if (needs_input) input->required();
    cmd->add_option("--out", args.out, "Output directory");
    return cmd;
  };

  auto* gen = add_common(app.add_subcommand("gen-corpus",
                                            "Generate a synthetic dataset"),
                         false);
  gen->add_option("--seed", args.seed, "Corpus seed");
  gen->add_option("--n", args.n, "Number of cases");

  add_common(app.add_subcommand("summarize",
                                "Summarize transcripts into memory streams"),
             true);

  auto* predict = add_common(
      app.add_subcommand("predict", "Predict risk from summary streams"), true);
  predict->add_option("--mode", args.mode, "zero-shot|few-shot");

  add_common(app.add_subcommand(
                 "assess", "Score manual scales (plus fusion when predictions "
                           "are present in --out)"),
             true);

  auto* evaluate = add_common(
      app.add_subcommand("evaluate", "Evaluate predictions against outcomes"),
      true);
  evaluate->add_option("--eval-mode", args.eval_mode, "llm|manual|fused");

  auto* run = add_common(app.add_subcommand("run", "Full chain"), true);
  run->add_option("--mode", args.mode, "zero-shot|few-shot");
  run->add_option("--eval-mode", args.eval_mode, "llm|manual|fused");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_corpus(args);
    if (app.get_subcommand("summarize")->parsed()) return cmd_summarize(args);
    if (predict->parsed()) return cmd_predict(args);
    if (app.get_subcommand("assess")->parsed()) return cmd_assess(args);
    if (evaluate->parsed()) return cmd_evaluate(args);
    if (run->parsed()) return cmd_run(args);
  } catch (const TransportError& e) {
    emit_error("TransportError", e.what());
    return 2;
  } catch (const AuthError& e) {
    emit_error("AuthError", e.what());
    return 2;
  } catch (const EmptyRun& e) {
    emit_error("EmptyRun", e.what());
    return 1;
  } catch (const ConfigError& e) {
    emit_error("ConfigError", e.what());
    return 1;
  } catch (const Error& e) {
    emit_error("ValidationError", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("InternalError", e.what());
    return 1;
  }
  return 0;
}
