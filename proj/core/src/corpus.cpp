#include "hotline/pipeline/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hotline/llm/lexicon.hpp"
#include "hotline/text.hpp"

namespace hotline::pipeline {

namespace {

// All randomness goes through pick() on one generator in a fixed draw
// order, so output is reproducible bit for bit.
std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

template <typename T>
void shuffle_deterministic(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[static_cast<std::size_t>(pick(rng, i))]);
  }
}

const std::vector<std::string>& operator_lines() {
  static const std::vector<std::string> lines = {
      "您好，这里是心理援助热线，我在听，您慢慢说。",
      "最近这段时间，您的睡眠和饮食怎么样？",
      "这种情况持续多久了？",
      "您愿意多说一说当时的情形吗？",
      "家里人知道您现在的感受吗？",
      "您今天打电话过来，最想聊的是什么？",
      "听起来您承受了很多，我们一起慢慢梳理。",
      "如果愿意，我们可以聊聊让您感到压力的事情。",
  };
  return lines;
}

const std::vector<std::string>& caller_lines() {
  static const std::vector<std::string> lines = {
      "最近心里很乱，晚上总是睡不着，白天也没有精神。",
      "工作上的事情一件接一件，我感觉自己撑不住了。",
      "家里人不太理解我，说了也没有用。",
      "有时候觉得日子过得很没有意思。",
      "朋友都很忙，我不太好意思去麻烦别人。",
      "这几个月瘦了很多，吃什么都没有胃口。",
      "我也说不清楚，就是心里堵得慌。",
      "以前喜欢的事情现在都提不起兴趣。",
      "白天上班还能分散注意力，一到晚上就特别难受。",
      "我试过自己调整，但是好像越来越糟。",
      "谢谢您听我说这些，心里稍微好受了一点。",
      "我再想想吧，也许过段时间会好一些。",
  };
  return lines;
}

std::vector<ScaleElement> weight_one_elements() {
  std::vector<ScaleElement> ones;
  for (ScaleElement e : scale_elements()) {
    if (element_max_score(e) == 1) ones.push_back(e);
  }
  return ones;
}

// Distinct elements whose weights sum to exactly `target` (0..16).
std::vector<ScaleElement> pick_factors(std::mt19937_64& rng, int target) {
  std::vector<ScaleElement> chosen;
  int remaining = target;

  // Ideation (weight 4) is forced when acute + the ten weight-1 elements
  // cannot cover the target, otherwise a coin flip.
  if (remaining > 12 || (remaining >= 4 && pick(rng, 2) == 0)) {
    chosen.push_back(ScaleElement::SuicidalIdeationAndPlan);
    remaining -= 4;
  }
  // Acute (weight 2) is forced when the weight-1 elements alone fall short.
  if (remaining > 10 || (remaining >= 2 && pick(rng, 2) == 0)) {
    chosen.push_back(ScaleElement::AcuteLifeEvents);
    remaining -= 2;
  }

  auto ones = weight_one_elements();
  shuffle_deterministic(ones, rng);
  for (int i = 0; i < remaining; ++i) {
    chosen.push_back(ones[static_cast<std::size_t>(i)]);
  }
  return chosen;
}

}  // namespace

const std::vector<std::string>& corpus_name_pool() {
  static const std::vector<std::string> names = {"张伟", "李娜", "王强",
                                                 "刘洋"};
  return names;
}

std::vector<CaseRecord> gen_corpus(const PipelineConfig::Corpus& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const int n = cfg.n_cases;
  const int n_positive =
      static_cast<int>(std::llround(cfg.positive_fraction * n));
  const int n_missing =
      static_cast<int>(std::llround(cfg.missing_scale_fraction * n));

  std::vector<bool> positive(static_cast<std::size_t>(n), false);
  std::fill(positive.begin(), positive.begin() + n_positive, true);
  shuffle_deterministic(positive, rng);

  std::vector<bool> missing_scale(static_cast<std::size_t>(n), false);
  std::fill(missing_scale.begin(), missing_scale.begin() + n_missing, true);
  shuffle_deterministic(missing_scale, rng);

  const auto& lexicon = llm::default_risk_lexicon();
  auto tag_of = [&](ScaleElement e) {
    for (const auto& f : lexicon) {
      if (f.element == e) return f.tag;
    }
    return std::string();
  };

  std::vector<CaseRecord> cases;
  cases.reserve(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i) {
    CaseRecord record;
    char id[32];
    std::snprintf(id, sizeof(id), "case-%04d", i + 1);
    record.case_id = id;

    const int target = positive[static_cast<std::size_t>(i)]
                           ? 8 + static_cast<int>(pick(rng, 9))   // 8..16
                           : static_cast<int>(pick(rng, 8));      // 0..7
    const auto factors = pick_factors(rng, target);

    // 1..10 segments at the default 2000-char budget. The cap keeps the
    // count at the target even after tags and the planted name/phone are
    // appended (every utterance stays well under 2000 characters, so greedy
    // packing wastes less than ~60 characters per segment).
    const int target_segments = 1 + static_cast<int>(pick(rng, 10));
    const std::size_t target_chars = static_cast<std::size_t>(
        (target_segments - 1) * 2000 + 200 + static_cast<int>(pick(rng, 701)));

    std::vector<Utterance> utterances;
    std::size_t total_chars = 0;
    bool operator_turn = true;
    while (total_chars < target_chars) {
      const auto& pool = operator_turn ? operator_lines() : caller_lines();
      std::string text = pool[static_cast<std::size_t>(pick(rng, pool.size()))];
      if (!utterances.empty()) ++total_chars;  // separator
      total_chars += u8_length(text);
      utterances.push_back(
          {operator_turn ? Speaker::Operator : Speaker::Caller, std::move(text)});
      operator_turn = !operator_turn;
    }

    std::vector<std::size_t> caller_positions;
    for (std::size_t u = 0; u < utterances.size(); ++u) {
      if (utterances[u].speaker == Speaker::Caller) caller_positions.push_back(u);
    }
    if (caller_positions.empty()) {
      utterances.push_back({Speaker::Caller,
                            caller_lines()[static_cast<std::size_t>(
                                pick(rng, caller_lines().size()))]});
      caller_positions.push_back(utterances.size() - 1);
    }

    // Identifying details at the top of the call; redaction must strip
    // these before prompts leave the pipeline.
    const std::string& name = corpus_name_pool()[static_cast<std::size_t>(
        pick(rng, corpus_name_pool().size()))];
    std::string phone = "13";
    for (int d = 0; d < 9; ++d) phone += static_cast<char>('0' + pick(rng, 10));
    utterances[caller_positions.front()].text =
        "我叫" + name + "，电话是" + phone + "。" +
        utterances[caller_positions.front()].text;

    // Spread the factor tags across the call.
    const std::size_t m = caller_positions.size();
    for (std::size_t j = 0; j < factors.size(); ++j) {
      std::size_t slot = ((j + 1) * m) / (factors.size() + 1);
      if (slot >= m) slot = m - 1;
      utterances[caller_positions[slot]].text += tag_of(factors[j]);
    }

    record.transcript = make_transcript(std::move(utterances));

    // Scale record: embedded factors answered at their element maximum,
    // everything else 0, plus a little seeded noise. Missing-scale cases
    // answer only four elements.
    ManualScaleRecord scale;
    auto embedded = [&](ScaleElement e) {
      return std::find(factors.begin(), factors.end(), e) != factors.end();
    };
    if (missing_scale[static_cast<std::size_t>(i)]) {
      for (ScaleElement e :
           {ScaleElement::SuicidalIdeationAndPlan, ScaleElement::SevereDepression,
            ScaleElement::Hopelessness, ScaleElement::AcuteLifeEvents}) {
        scale.answer(e) = embedded(e) ? element_max_score(e) : 0;
      }
    } else {
      for (ScaleElement e : scale_elements()) {
        scale.answer(e) = embedded(e) ? element_max_score(e) : 0;
      }
      const auto ones = weight_one_elements();
      for (int noise = 0; noise < 2; ++noise) {
        if (pick(rng, 4) == 0) {
          ScaleElement e = ones[static_cast<std::size_t>(pick(rng, ones.size()))];
          if (!embedded(e)) scale.answer(e) = 1;
        }
      }
    }
    record.scale = scale;

    FollowUpOutcome outcome;
    outcome.attempted_suicide = positive[static_cast<std::size_t>(i)];
    outcome.status = FollowUpStatus::Confirmed;
    outcome.schedule_points_reached = 4;
    record.outcome = outcome;

    record.meta["age"] = std::to_string(18 + pick(rng, 40));
    record.meta["gender"] = pick(rng, 2) == 0 ? "female" : "male";

    cases.push_back(std::move(record));
  }
  return cases;
}

}  // namespace hotline::pipeline
