#include "hotline/llm/lexicon.hpp"

namespace hotline::llm {

std::string factor_tag(ScaleElement e) {
  return "[risk:" + element_key(e) + "]";
}

const RiskLexicon& default_risk_lexicon() {
  static const RiskLexicon lexicon = [] {
    RiskLexicon lex;
    for (ScaleElement e : scale_elements()) {
      lex.push_back({e, element_name(e), factor_tag(e), element_max_score(e)});
    }
    return lex;
  }();
  return lexicon;
}

std::vector<const RiskFactor*> match_factors(std::string_view text,
                                             const RiskLexicon& lexicon) {
  std::vector<const RiskFactor*> matched;
  for (const auto& factor : lexicon) {
    if (text.find(factor.tag) != std::string_view::npos) {
      matched.push_back(&factor);
    }
  }
  return matched;
}

int matched_weight_sum(std::string_view text, const RiskLexicon& lexicon) {
  int sum = 0;
  for (const auto* factor : match_factors(text, lexicon)) sum += factor->weight;
  return sum;
}

}  // namespace hotline::llm
