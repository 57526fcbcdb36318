#include "hotline/pipeline/io.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "hotline/errors.hpp"

namespace hotline::pipeline {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write file: " + path);
  return out;
}

std::vector<json> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::vector<json> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": not a JSON object");
    }
    records.push_back(std::move(record));
  }
  return records;
}

template <typename T>
T require(const json& record, const char* field, const std::string& context) {
  if (!record.contains(field)) {
    throw ValidationError(context + ": missing field \"" + field + "\"");
  }
  try {
    return record.at(field).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(context + ": field \"" + field +
                          "\" has the wrong type");
  }
}

json scale_to_json(const ManualScaleRecord& record) {
  json answers = json::object();
  for (ScaleElement e : scale_elements()) {
    if (record.answer(e).has_value()) {
      answers[element_key(e)] = *record.answer(e);
    }
  }
  return json{{"answers", answers}};
}

ManualScaleRecord scale_from_json(const json& node, const std::string& context) {
  ManualScaleRecord record;
  const json answers = node.value("answers", json::object());
  for (const auto& [key, value] : answers.items()) {
    ScaleElement e = element_from_key(key);  // throws on unknown key
    if (!value.is_number_integer()) {
      throw ValidationError(context + ": scale answer " + key +
                            " is not an integer");
    }
    record.answer(e) = value.get<int>();
  }
  return record;
}

json summary_to_json(const SegmentSummary& s) {
  return json{{"segment_index", s.segment_index},
              {"text", s.text},
              {"importance", s.importance},
              {"created_at", s.created_at},
              {"last_access", s.last_access}};
}

SegmentSummary summary_from_json(const json& node, const std::string& context) {
  SegmentSummary s;
  s.segment_index = require<int>(node, "segment_index", context);
  s.text = require<std::string>(node, "text", context);
  s.importance = require<int>(node, "importance", context);
  s.created_at = require<int>(node, "created_at", context);
  s.last_access = require<int>(node, "last_access", context);
  return s;
}

json interval_to_json(const eval::MetricInterval& m) {
  return json{{"point", m.point},
              {"ci_low", m.ci_low},
              {"ci_high", m.ci_high},
              {"defined", m.defined},
              {"discarded_resamples", m.discarded_resamples}};
}

eval::MetricInterval interval_from_json(const json& node) {
  eval::MetricInterval m;
  m.point = node.value("point", 0.0);
  m.ci_low = node.value("ci_low", 0.0);
  m.ci_high = node.value("ci_high", 0.0);
  m.defined = node.value("defined", false);
  m.discarded_resamples = node.value("discarded_resamples", 0);
  return m;
}

}  // namespace

std::vector<CaseRecord> read_cases(const std::string& path) {
  std::vector<CaseRecord> cases;
  std::set<std::string> seen;
  int index = 0;
  for (const auto& record : read_lines(path)) {
    ++index;
    const std::string context = path + " record " + std::to_string(index);
    CaseRecord c;
    c.case_id = require<std::string>(record, "case_id", context);
    if (!seen.insert(c.case_id).second) {
      throw ValidationError(context + ": duplicate case_id " + c.case_id);
    }

    std::vector<Utterance> utterances;
    for (const auto& u : record.value("utterances", json::array())) {
      utterances.push_back(
          {speaker_from_string(require<std::string>(u, "speaker", context)),
           require<std::string>(u, "text", context)});
    }
    c.transcript =
        make_transcript(std::move(utterances),
                        record.value("separator", std::string("\n")));

    if (record.contains("scale") && !record["scale"].is_null()) {
      c.scale = scale_from_json(record["scale"], context);
    }
    if (record.contains("outcome") && !record["outcome"].is_null()) {
      const json& o = record["outcome"];
      FollowUpOutcome outcome;
      outcome.attempted_suicide = require<bool>(o, "attempted_suicide", context);
      outcome.status = follow_up_status_from_string(
          require<std::string>(o, "status", context));
      outcome.schedule_points_reached =
          o.value("schedule_points_reached", 0);
      c.outcome = outcome;
    }
    const json meta = record.value("meta", json::object());
    for (const auto& [key, value] : meta.items()) {
      c.meta[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

void write_cases(const std::string& path, const std::vector<CaseRecord>& cases) {
  auto out = open_out(path);
  for (const auto& c : cases) {
    json utterances = json::array();
    for (const auto& u : c.transcript.utterances) {
      utterances.push_back({{"speaker", to_string(u.speaker)}, {"text", u.text}});
    }
    json record = {{"case_id", c.case_id}, {"utterances", utterances}};
    if (c.transcript.separator != "\n") {
      record["separator"] = c.transcript.separator;
    }
    if (c.scale) record["scale"] = scale_to_json(*c.scale);
    if (c.outcome) {
      record["outcome"] = {
          {"attempted_suicide", c.outcome->attempted_suicide},
          {"status", to_string(c.outcome->status)},
          {"schedule_points_reached", c.outcome->schedule_points_reached}};
    }
    if (!c.meta.empty()) record["meta"] = c.meta;
    out << record.dump() << '\n';
  }
}

std::vector<StreamRecord> read_streams(const std::string& path) {
  std::vector<StreamRecord> streams;
  std::set<std::string> seen;
  int index = 0;
  for (const auto& record : read_lines(path)) {
    ++index;
    const std::string context = path + " record " + std::to_string(index);
    StreamRecord s;
    s.case_id = require<std::string>(record, "case_id", context);
    if (!seen.insert(s.case_id).second) {
      throw ValidationError(context + ": duplicate case_id " + s.case_id);
    }
    for (const auto& e : record.value("entries", json::array())) {
      s.stream.entries.push_back(summary_from_json(e, context));
    }
    s.stream.final_summary = require<std::string>(record, "final_summary", context);
    streams.push_back(std::move(s));
  }
  return streams;
}

void write_streams(const std::string& path,
                   const std::vector<StreamRecord>& streams) {
  auto out = open_out(path);
  for (const auto& s : streams) {
    json entries = json::array();
    for (const auto& e : s.stream.entries) entries.push_back(summary_to_json(e));
    json record = {{"case_id", s.case_id},
                   {"entries", entries},
                   {"final_summary", s.stream.final_summary}};
    out << record.dump() << '\n';
  }
}

std::vector<PredictionRecord> read_predictions(const std::string& path) {
  std::vector<PredictionRecord> predictions;
  std::set<std::string> seen;
  int index = 0;
  for (const auto& record : read_lines(path)) {
    ++index;
    const std::string context = path + " record " + std::to_string(index);
    PredictionRecord p;
    p.case_id = require<std::string>(record, "case_id", context);
    if (!seen.insert(p.case_id).second) {
      throw ValidationError(context + ": duplicate case_id " + p.case_id);
    }
    p.prediction.mode = prediction_mode_from_string(
        require<std::string>(record, "mode", context));
    p.prediction.score = require<int>(record, "score", context);
    if (p.prediction.score < 0 || p.prediction.score > 16) {
      throw ValidationError(context + ": score outside [0,16]");
    }
    p.prediction.label =
        risk_label_from_string(require<std::string>(record, "label", context));
    if (p.prediction.label != label_for_score(p.prediction.score)) {
      throw ValidationError(context + ": label disagrees with score " +
                            std::to_string(p.prediction.score));
    }
    for (const auto& f : record.value("key_factors", json::array())) {
      if (f.is_string()) p.prediction.key_factors.push_back(f.get<std::string>());
    }
    p.prediction.rationale = record.value("rationale", std::string());
    p.prediction.raw_response = record.value("raw_response", std::string());
    predictions.push_back(std::move(p));
  }
  return predictions;
}

void write_predictions(const std::string& path,
                       const std::vector<PredictionRecord>& predictions) {
  auto out = open_out(path);
  for (const auto& p : predictions) {
    json record = {{"case_id", p.case_id},
                   {"mode", to_string(p.prediction.mode)},
                   {"score", p.prediction.score},
                   {"label", to_string(p.prediction.label)},
                   {"key_factors", p.prediction.key_factors},
                   {"rationale", p.prediction.rationale},
                   {"raw_response", p.prediction.raw_response}};
    out << record.dump() << '\n';
  }
}

eval::MetricReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ValidationError(path + ": not a JSON object");
  }
  eval::MetricReport report;
  report.sensitivity = interval_from_json(doc.value("sensitivity", json::object()));
  report.specificity = interval_from_json(doc.value("specificity", json::object()));
  report.precision = interval_from_json(doc.value("precision", json::object()));
  report.f1 = interval_from_json(doc.value("f1", json::object()));
  report.n_cases = doc.value("n_cases", 0);
  report.n_excluded = doc.value("n_excluded", 0);
  report.seed = doc.value("seed", std::uint64_t{0});
  report.resamples = doc.value("resamples", 0);
  return report;
}

void write_report(const std::string& path, const eval::MetricReport& report,
                  eval::EvalMode mode) {
  json doc = {{"mode", eval::to_string(mode)},
              {"n_cases", report.n_cases},
              {"n_excluded", report.n_excluded},
              {"seed", report.seed},
              {"resamples", report.resamples},
              {"sensitivity", interval_to_json(report.sensitivity)},
              {"specificity", interval_to_json(report.specificity)},
              {"precision", interval_to_json(report.precision)},
              {"f1", interval_to_json(report.f1)}};
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

}  // namespace hotline::pipeline
