#include "saint/pipeline/classifier.hpp"

#include <algorithm>

#include "saint/errors.hpp"
#include "saint/pipeline/preprocess.hpp"

namespace saint {

Classifier::Classifier(const ModelConfig& config, Vocabulary words, CharVocabulary chars,
                       EmbeddingMatrix embedding, PenaltyMatrix penalty, bool use_penalty)
    : words_(std::move(words)),
      chars_(std::move(chars)),
      penalty_(penalty),
      use_penalty_(use_penalty),
      net_(config, std::move(embedding), chars_.size()) {
  if (net_.embeddings().rows() != words_.size()) {
    throw DimensionError("embedding has " + std::to_string(net_.embeddings().rows()) +
                         " rows for a vocabulary of " + std::to_string(words_.size()));
  }
}

EncodedMessage Classifier::encode(std::string_view text,
                                  const std::optional<std::string>& target) const {
  return encode_message(prepare_text(text, target), words_, chars_, config().sequence_length);
}

std::array<double, kSentimentClasses> Classifier::probabilities(const EncodedMessage& message) {
  const auto out = net_.forward(message, Mode::infer);
  std::array<double, kSentimentClasses> p{};
  std::copy_n(out.sentiment.values().begin(), kSentimentClasses, p.begin());
  return p;
}

std::array<double, kSentimentClasses> Classifier::probabilities(
    std::string_view text, const std::optional<std::string>& target) {
  return probabilities(encode(text, target));
}

std::optional<std::array<double, kRuleClasses>> Classifier::rule_probabilities(
    std::string_view text, const std::optional<std::string>& target) {
  if (!config().multitask) return std::nullopt;
  const auto out = net_.forward(encode(text, target), Mode::infer);
  std::array<double, kRuleClasses> p{};
  std::copy_n(out.rule.values().begin(), kRuleClasses, p.begin());
  return p;
}

Sentiment Classifier::predict(std::string_view text, const std::optional<std::string>& target) {
  const auto p = probabilities(text, target);
  return sentiment_from_index(argmax(p));
}

MetricsReport evaluate(Classifier& model, std::span<const LabeledMessage> samples,
                       Averaging averaging) {
  if (samples.empty()) throw InputError("cannot evaluate on an empty split");
  std::vector<Sentiment> truth, predicted;
  truth.reserve(samples.size());
  predicted.reserve(samples.size());
  for (const auto& s : samples) {
    truth.push_back(s.sentiment);
    predicted.push_back(model.predict(s.text, s.target));
  }
  return compute_metrics(truth, predicted, averaging);
}

}  // namespace saint
