#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace saint {

// Class order is fixed: it indexes one-hot vectors and the penalty matrix.
enum class Sentiment : std::size_t { positive = 0, negative = 1, neutral = 2 };
inline constexpr std::size_t kSentimentClasses = 3;

enum class RuleLabel : std::size_t {
  directly_simple = 0,
  directly_comparable = 1,
  question = 2,
  heuristics = 3,
};
inline constexpr std::size_t kRuleClasses = 4;

inline constexpr std::size_t index_of(Sentiment s) { return static_cast<std::size_t>(s); }
inline constexpr std::size_t index_of(RuleLabel r) { return static_cast<std::size_t>(r); }

Sentiment sentiment_from_index(std::size_t i);
RuleLabel rule_from_index(std::size_t i);

// Corpus-file spellings: positive|negative|neutral and
// simple|comparable|question|heuristic.
std::string_view to_string(Sentiment s);
std::string_view to_string(RuleLabel r);
Sentiment parse_sentiment(std::string_view text);
RuleLabel parse_rule(std::string_view text);

// Swaps positive and negative; neutral is returned unchanged.
Sentiment flip_polarity(Sentiment s);
bool is_polar(Sentiment s);

std::array<double, kSentimentClasses> one_hot(Sentiment s);
std::array<double, kRuleClasses> one_hot(RuleLabel r);

enum class Provenance { original, term_swap, negation };
std::string_view to_string(Provenance p);

struct LabeledMessage {
  std::size_t id = 0;
  std::string text;
  Sentiment sentiment = Sentiment::neutral;
  std::optional<RuleLabel> rule;
  std::optional<std::string> target;
  Provenance provenance = Provenance::original;
  // Id of the original this sample was derived from (its own id for originals).
  std::size_t source_id = 0;
};

}  // namespace saint
