#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hotline/domain.hpp"
#include "hotline/scale.hpp"

namespace hotline::eval {

/// Positive class is "attempted suicide during follow-up".
struct ConfusionMatrix {
  long tp = 0;  // predicted HighRisk, attempted
  long fp = 0;  // predicted HighRisk, did not attempt
  long fn = 0;  // predicted LowModerate, attempted
  long tn = 0;  // predicted LowModerate, did not attempt

  long total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// One case as (predicted label, attempted-suicide outcome).
using LabeledOutcome = std::pair<RiskLabel, bool>;

/// Tallies predictions against outcomes. Throws EmptyRun on an empty list.
ConfusionMatrix confusion(const std::vector<LabeledOutcome>& cases);

/// A point metric in percent; zero-denominator metrics are flagged
/// undefined, never NaN.
struct MetricPoint {
  double value = 0.0;
  bool defined = false;
};

struct PointMetrics {
  MetricPoint sensitivity;  // tp / (tp + fn)
  MetricPoint specificity;  // tn / (tn + fp)
  MetricPoint precision;    // tp / (tp + fp)
  MetricPoint f1;           // 2tp / (2tp + fp + fn)
};

PointMetrics metrics(const ConfusionMatrix& cm);

struct MetricInterval {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool defined = false;
  int discarded_resamples = 0;  // resamples where the metric was undefined

  bool operator==(const MetricInterval&) const = default;
};

struct MetricReport {
  MetricInterval sensitivity;
  MetricInterval specificity;
  MetricInterval precision;
  MetricInterval f1;
  int n_cases = 0;
  int n_excluded = 0;
  std::uint64_t seed = 0;
  int resamples = 0;

  bool operator==(const MetricReport&) const = default;
};

struct BootstrapConfig {
  int resamples = 2000;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Percentile bootstrap over with-replacement resamples of the cases.
/// Point estimates come from the original sample; the 95% interval is the
/// nearest-rank 2.5th/97.5th percentile over the resamples where the metric
/// is defined. Each resample's generator is derived from (seed, resample
/// index), so serial and parallel runs agree bit-exactly.
/// Throws AllResamplesUndefined if a metric defined on the original sample
/// is defined in zero resamples.
MetricReport bootstrap_ci(const std::vector<LabeledOutcome>& cases,
                          const BootstrapConfig& cfg);

enum class EvalMode { LlmOnly, ManualOnly, Fused };

std::string to_string(EvalMode mode);
EvalMode eval_mode_from_string(const std::string& s);

/// Inputs for one evaluated case. The outcome must be confirmed.
struct EvalCase {
  std::string case_id;
  std::optional<RiskPrediction> prediction;
  std::optional<ManualScaleRecord> scale;
  FollowUpOutcome outcome;
};

/// Runs one evaluation. ManualOnly and Fused exclude cases whose scale
/// record is absent or scores as missing (tracked in n_excluded); LlmOnly
/// evaluates every case. Throws EmptyRun when nothing remains.
MetricReport evaluate_run(const std::vector<EvalCase>& cases, EvalMode mode,
                          const FusionConfig& fusion,
                          const BootstrapConfig& bootstrap);

/// Plain-text row of `mean [low, high]` cells, two-decimal percent.
std::string format_report_table(const MetricReport& report);

}  // namespace hotline::eval
