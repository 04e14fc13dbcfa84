#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "saint/charenc/char_encoder.hpp"
#include "saint/embedding/embedding.hpp"
#include "saint/embedding/vocabulary.hpp"
#include "saint/loss/loss.hpp"
#include "saint/models/sentiment_net.hpp"
#include "saint/pipeline/metrics.hpp"
#include "saint/text/labels.hpp"

namespace saint {

/// A network together with everything needed to turn raw text into its input.
class Classifier {
 public:
  Classifier(const ModelConfig& config, Vocabulary words, CharVocabulary chars,
             EmbeddingMatrix embedding, PenaltyMatrix penalty = {}, bool use_penalty = false);

  const ModelConfig& config() const { return net_.config(); }
  const Vocabulary& vocabulary() const { return words_; }
  const CharVocabulary& char_vocabulary() const { return chars_; }
  const PenaltyMatrix& penalty() const { return penalty_; }
  bool use_penalty() const { return use_penalty_; }
  SentimentNet& net() { return net_; }
  const SentimentNet& net() const { return net_; }

  // Masks the target (if given) and encodes to fixed length.
  EncodedMessage encode(std::string_view text, const std::optional<std::string>& target = {}) const;

  std::array<double, kSentimentClasses> probabilities(const EncodedMessage& message);
  std::array<double, kSentimentClasses> probabilities(std::string_view text,
                                                      const std::optional<std::string>& target = {});
  // Empty unless the network has a rule head.
  std::optional<std::array<double, kRuleClasses>> rule_probabilities(
      std::string_view text, const std::optional<std::string>& target = {});
  Sentiment predict(std::string_view text, const std::optional<std::string>& target = {});

 private:
  Vocabulary words_;
  CharVocabulary chars_;
  PenaltyMatrix penalty_;
  bool use_penalty_;
  SentimentNet net_;
};

// Throws InputError on an empty sample list.
MetricsReport evaluate(Classifier& model, std::span<const LabeledMessage> samples,
                       Averaging averaging = Averaging::macro);

}  // namespace saint
