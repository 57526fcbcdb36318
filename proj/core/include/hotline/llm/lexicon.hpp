#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hotline/scale.hpp"

namespace hotline::llm {

/// One keyword factor of the mock backend's lexicon. The tag is the literal
/// marker scanned for in prompts; the weight equals the matching scale
/// element's maximum score, so mock scores land in the real 0-16 range.
struct RiskFactor {
  ScaleElement element;
  std::string name;  // human-readable element name
  std::string tag;   // e.g. "[risk:suicidal_ideation_and_plan]"
  int weight = 1;
};

using RiskLexicon = std::vector<RiskFactor>;

/// Twelve factors mirroring the manual scale elements.
const RiskLexicon& default_risk_lexicon();

/// Tag string for one element.
std::string factor_tag(ScaleElement e);

/// Distinct factors whose tag occurs in `text`, in lexicon order.
std::vector<const RiskFactor*> match_factors(std::string_view text,
                                             const RiskLexicon& lexicon);

/// Sum of matched factor weights, one count per distinct factor.
int matched_weight_sum(std::string_view text, const RiskLexicon& lexicon);

}  // namespace hotline::llm
