#include "hotline/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <thread>

#include "hotline/errors.hpp"

namespace hotline::eval {

namespace {

MetricPoint ratio_percent(long num, long den) {
  if (den == 0) return {0.0, false};
  return {100.0 * static_cast<double>(num) / static_cast<double>(den), true};
}

// Nearest-rank percentile with per-mille p over ascending values.
double nearest_rank(const std::vector<double>& sorted, long permille) {
  const long m = static_cast<long>(sorted.size());
  long rank = (permille * m + 999) / 1000;
  rank = std::clamp(rank, 1L, m);
  return sorted[static_cast<std::size_t>(rank - 1)];
}

struct ResampleMetrics {
  PointMetrics values;
};

std::mt19937_64 resample_generator(std::uint64_t seed, int resample_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(resample_index)};
  return std::mt19937_64(seq);
}

PointMetrics resample_once(const std::vector<LabeledOutcome>& cases,
                           std::uint64_t seed, int resample_index) {
  auto gen = resample_generator(seed, resample_index);
  const std::size_t n = cases.size();
  ConfusionMatrix cm;
  for (std::size_t draw = 0; draw < n; ++draw) {
    const auto& [label, attempted] = cases[gen() % n];
    if (label == RiskLabel::HighRisk) {
      attempted ? ++cm.tp : ++cm.fp;
    } else {
      attempted ? ++cm.fn : ++cm.tn;
    }
  }
  return metrics(cm);
}

MetricInterval summarize_metric(const MetricPoint& point,
                                const std::vector<MetricPoint>& resampled,
                                const char* name) {
  MetricInterval interval;
  std::vector<double> defined;
  defined.reserve(resampled.size());
  for (const auto& m : resampled) {
    if (m.defined) defined.push_back(m.value);
  }
  interval.discarded_resamples =
      static_cast<int>(resampled.size() - defined.size());

  if (!point.defined) {
    return interval;  // undefined point, no interval
  }
  if (defined.empty()) {
    throw AllResamplesUndefined(std::string(name) +
                                " defined in zero resamples");
  }
  std::sort(defined.begin(), defined.end());
  interval.point = point.value;
  interval.ci_low = nearest_rank(defined, 25);
  interval.ci_high = nearest_rank(defined, 975);
  interval.defined = true;
  return interval;
}

}  // namespace

ConfusionMatrix confusion(const std::vector<LabeledOutcome>& cases) {
  if (cases.empty()) throw EmptyRun("no cases to evaluate");
  ConfusionMatrix cm;
  for (const auto& [label, attempted] : cases) {
    if (label == RiskLabel::HighRisk) {
      attempted ? ++cm.tp : ++cm.fp;
    } else {
      attempted ? ++cm.fn : ++cm.tn;
    }
  }
  return cm;
}

PointMetrics metrics(const ConfusionMatrix& cm) {
  PointMetrics m;
  m.sensitivity = ratio_percent(cm.tp, cm.tp + cm.fn);
  m.specificity = ratio_percent(cm.tn, cm.tn + cm.fp);
  m.precision = ratio_percent(cm.tp, cm.tp + cm.fp);
  m.f1 = ratio_percent(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn);
  return m;
}

MetricReport bootstrap_ci(const std::vector<LabeledOutcome>& cases,
                          const BootstrapConfig& cfg) {
  if (cases.empty()) throw EmptyRun("no cases to evaluate");
  if (cfg.resamples < 1) throw ConfigError("bootstrap resamples must be >= 1");

  const PointMetrics original = metrics(confusion(cases));

  std::vector<PointMetrics> per_resample(
      static_cast<std::size_t>(cfg.resamples));
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int r = 0; r < cfg.resamples; ++r) {
      per_resample[static_cast<std::size_t>(r)] =
          resample_once(cases, cfg.seed, r);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int r = t; r < cfg.resamples; r += threads) {
          per_resample[static_cast<std::size_t>(r)] =
              resample_once(cases, cfg.seed, r);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  auto collect = [&](MetricPoint PointMetrics::*member) {
    std::vector<MetricPoint> values;
    values.reserve(per_resample.size());
    for (const auto& pm : per_resample) values.push_back(pm.*member);
    return values;
  };

  MetricReport report;
  report.sensitivity =
      summarize_metric(original.sensitivity,
                       collect(&PointMetrics::sensitivity), "sensitivity");
  report.specificity =
      summarize_metric(original.specificity,
                       collect(&PointMetrics::specificity), "specificity");
  report.precision = summarize_metric(
      original.precision, collect(&PointMetrics::precision), "precision");
  report.f1 = summarize_metric(original.f1, collect(&PointMetrics::f1), "f1");
  report.n_cases = static_cast<int>(cases.size());
  report.seed = cfg.seed;
  report.resamples = cfg.resamples;
  return report;
}

std::string to_string(EvalMode mode) {
  switch (mode) {
    case EvalMode::LlmOnly: return "llm";
    case EvalMode::ManualOnly: return "manual";
    case EvalMode::Fused: return "fused";
  }
  return "llm";
}

EvalMode eval_mode_from_string(const std::string& s) {
  if (s == "llm") return EvalMode::LlmOnly;
  if (s == "manual") return EvalMode::ManualOnly;
  if (s == "fused") return EvalMode::Fused;
  throw ConfigError("unknown eval mode: " + s);
}

MetricReport evaluate_run(const std::vector<EvalCase>& cases, EvalMode mode,
                          const FusionConfig& fusion,
                          const BootstrapConfig& bootstrap) {
  // Canonical case order: bootstrap draws are index-based, so the report
  // must not depend on how the input records happened to be ordered.
  std::vector<const EvalCase*> ordered;
  ordered.reserve(cases.size());
  for (const auto& c : cases) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(),
            [](const EvalCase* a, const EvalCase* b) {
              return a->case_id < b->case_id;
            });

  std::vector<LabeledOutcome> run;
  int excluded = 0;

  for (const auto* cp : ordered) {
    const EvalCase& c = *cp;
    if (c.outcome.status != FollowUpStatus::Confirmed) {
      throw ValidationError("case " + c.case_id +
                            " has no confirmed outcome; filter before "
                            "evaluation");
    }

    std::optional<ScaleResult> manual;
    if (mode != EvalMode::LlmOnly) {
      manual = c.scale.has_value() ? score_scale(*c.scale)
                                   : ScaleResult{{}, {}, true};
      if (manual->missing) {
        ++excluded;
        continue;
      }
    }

    RiskLabel predicted;
    switch (mode) {
      case EvalMode::LlmOnly:
        if (!c.prediction) {
          throw ValidationError("case " + c.case_id + " has no prediction");
        }
        predicted = c.prediction->label;
        break;
      case EvalMode::ManualOnly:
        predicted = *manual->label;
        break;
      case EvalMode::Fused:
        if (!c.prediction) {
          throw ValidationError("case " + c.case_id + " has no prediction");
        }
        predicted = fuse_scores(*manual, *c.prediction, fusion).label;
        break;
    }
    run.emplace_back(predicted, c.outcome.attempted_suicide);
  }

  if (run.empty()) throw EmptyRun("no cases left after exclusions");

  MetricReport report = bootstrap_ci(run, bootstrap);
  report.n_excluded = excluded;
  return report;
}

std::string format_report_table(const MetricReport& report) {
  auto cell = [](const MetricInterval& m) {
    if (!m.defined) return std::string("undefined");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f [%.2f, %.2f]", m.point, m.ci_low,
                  m.ci_high);
    return std::string(buf);
  };

  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-14s%s\n", "Sensitivity",
                cell(report.sensitivity).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-14s%s\n", "Specificity",
                cell(report.specificity).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-14s%s\n", "Precision",
                cell(report.precision).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-14s%s\n", "F1-score",
                cell(report.f1).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-14sn=%d excluded=%d resamples=%d seed=%llu\n",
                "Run", report.n_cases, report.n_excluded, report.resamples,
                static_cast<unsigned long long>(report.seed));
  out += line;
  return out;
}

}  // namespace hotline::eval
