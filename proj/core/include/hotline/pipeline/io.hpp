#pragma once

#include <string>
#include <vector>

#include "hotline/case_record.hpp"
#include "hotline/domain.hpp"
#include "hotline/evaluation.hpp"

namespace hotline::pipeline {

// Line-delimited UTF-8 records, one JSON object per line. Loading rejects
// duplicate case_ids and malformed lines with their line number.

std::vector<CaseRecord> read_cases(const std::string& path);
void write_cases(const std::string& path, const std::vector<CaseRecord>& cases);

struct StreamRecord {
  std::string case_id;
  CaseSummaryStream stream;

  bool operator==(const StreamRecord&) const = default;
};

std::vector<StreamRecord> read_streams(const std::string& path);
void write_streams(const std::string& path,
                   const std::vector<StreamRecord>& streams);

struct PredictionRecord {
  std::string case_id;
  RiskPrediction prediction;

  bool operator==(const PredictionRecord&) const = default;
};

std::vector<PredictionRecord> read_predictions(const std::string& path);
void write_predictions(const std::string& path,
                       const std::vector<PredictionRecord>& predictions);

eval::MetricReport read_report(const std::string& path);
void write_report(const std::string& path, const eval::MetricReport& report,
                  eval::EvalMode mode);

}  // namespace hotline::pipeline
