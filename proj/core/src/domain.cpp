#include "hotline/domain.hpp"

#include "hotline/errors.hpp"

namespace hotline {

std::string to_string(Speaker s) {
  switch (s) {
    case Speaker::Operator: return "operator";
    case Speaker::Caller: return "caller";
    case Speaker::Unknown: return "unknown";
  }
  return "unknown";
}

Speaker speaker_from_string(const std::string& s) {
  if (s == "operator") return Speaker::Operator;
  if (s == "caller") return Speaker::Caller;
  if (s == "unknown") return Speaker::Unknown;
  throw ValidationError("unknown speaker: " + s);
}

std::string join_utterances(const std::vector<Utterance>& utterances,
                            const std::string& separator) {
  std::string out;
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    if (i > 0) out += separator;
    out += utterances[i].text;
  }
  return out;
}

TranscriptDocument make_transcript(std::vector<Utterance> utterances,
                                   std::string separator) {
  TranscriptDocument doc;
  doc.text = join_utterances(utterances, separator);
  doc.utterances = std::move(utterances);
  doc.separator = std::move(separator);
  return doc;
}

std::string to_string(FollowUpStatus s) {
  return s == FollowUpStatus::Confirmed ? "confirmed" : "lost";
}

FollowUpStatus follow_up_status_from_string(const std::string& s) {
  if (s == "confirmed") return FollowUpStatus::Confirmed;
  if (s == "lost") return FollowUpStatus::Lost;
  throw ValidationError("unknown follow-up status: " + s);
}

std::string to_string(RiskLabel label) {
  return label == RiskLabel::HighRisk ? "high" : "low-moderate";
}

RiskLabel risk_label_from_string(const std::string& s) {
  if (s == "high") return RiskLabel::HighRisk;
  if (s == "low-moderate") return RiskLabel::LowModerate;
  throw ValidationError("unknown risk label: " + s);
}

std::string to_string(PredictionMode mode) {
  return mode == PredictionMode::ZeroShot ? "zero-shot" : "few-shot";
}

PredictionMode prediction_mode_from_string(const std::string& s) {
  if (s == "zero-shot") return PredictionMode::ZeroShot;
  if (s == "few-shot") return PredictionMode::FewShot;
  throw ValidationError("unknown prediction mode: " + s);
}

}  // namespace hotline
