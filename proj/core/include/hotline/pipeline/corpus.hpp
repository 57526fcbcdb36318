#pragma once

#include <vector>

#include "hotline/case_record.hpp"
#include "hotline/pipeline/config.hpp"

namespace hotline::pipeline {

/// Deterministic synthetic corpus: a pure function of the corpus config.
/// Positive cases embed lexicon factor tags whose weight sum is >= 8 so the
/// mock backend scores them high-risk end to end; negative cases stay below
/// 8. A configured fraction of cases carries a scale record with more than
/// five unanswered elements. Transcripts span 1-10 segments at the default
/// 2000-character budget and open with a planted name and phone number so
/// the redaction path is exercised.
std::vector<CaseRecord> gen_corpus(const PipelineConfig::Corpus& cfg);

/// Names planted by the generator; configure these as the redaction name
/// list to scrub them from outbound prompts.
const std::vector<std::string>& corpus_name_pool();

}  // namespace hotline::pipeline
