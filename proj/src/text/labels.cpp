#include "saint/text/labels.hpp"

#include "saint/errors.hpp"

namespace saint {

Sentiment sentiment_from_index(std::size_t i) {
  if (i >= kSentimentClasses) throw InputError("sentiment index " + std::to_string(i));
  return static_cast<Sentiment>(i);
}

RuleLabel rule_from_index(std::size_t i) {
  if (i >= kRuleClasses) throw InputError("rule index " + std::to_string(i));
  return static_cast<RuleLabel>(i);
}

std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::positive: return "positive";
    case Sentiment::negative: return "negative";
    case Sentiment::neutral: return "neutral";
  }
  return "?";
}

std::string_view to_string(RuleLabel r) {
  switch (r) {
    case RuleLabel::directly_simple: return "simple";
    case RuleLabel::directly_comparable: return "comparable";
    case RuleLabel::question: return "question";
    case RuleLabel::heuristics: return "heuristic";
  }
  return "?";
}

Sentiment parse_sentiment(std::string_view text) {
  if (text == "positive") return Sentiment::positive;
  if (text == "negative") return Sentiment::negative;
  if (text == "neutral") return Sentiment::neutral;
  throw InputError("unknown sentiment label '" + std::string(text) + "'");
}

RuleLabel parse_rule(std::string_view text) {
  if (text == "simple") return RuleLabel::directly_simple;
  if (text == "comparable") return RuleLabel::directly_comparable;
  if (text == "question") return RuleLabel::question;
  if (text == "heuristic") return RuleLabel::heuristics;
  throw InputError("unknown rule label '" + std::string(text) + "'");
}

Sentiment flip_polarity(Sentiment s) {
  switch (s) {
    case Sentiment::positive: return Sentiment::negative;
    case Sentiment::negative: return Sentiment::positive;
    case Sentiment::neutral: return Sentiment::neutral;
  }
  return s;
}

bool is_polar(Sentiment s) { return s != Sentiment::neutral; }

std::array<double, kSentimentClasses> one_hot(Sentiment s) {
  std::array<double, kSentimentClasses> v{};
  v[index_of(s)] = 1.0;
  return v;
}

std::array<double, kRuleClasses> one_hot(RuleLabel r) {
  std::array<double, kRuleClasses> v{};
  v[index_of(r)] = 1.0;
  return v;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::original: return "original";
    case Provenance::term_swap: return "term_swap";
    case Provenance::negation: return "negation";
  }
  return "?";
}

}  // namespace saint
