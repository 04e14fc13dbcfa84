#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "saint/augment/augment.hpp"
#include "saint/augment/dictionary.hpp"
#include "saint/embedding/embedding.hpp"
#include "saint/embedding/vocabulary.hpp"
#include "saint/loss/loss.hpp"
#include "saint/pipeline/classifier.hpp"
#include "saint/pipeline/config.hpp"
#include "saint/pipeline/dataset.hpp"
#include "saint/rules/rules.hpp"

namespace saint {

/// External knowledge used during training.
struct Resources {
  SentimentDictionary dictionary;
  NegationLexicon lexicon;
  RulePatterns patterns = RulePatterns::defaults();
  PenaltyMatrix penalty;
  std::optional<std::pair<EmbeddingMatrix, Vocabulary>> embeddings;

  // Reads every path set in the config; unset paths keep the defaults above.
  static Resources load(const TrainConfig& config);
};

struct BatchRecord {
  std::size_t epoch = 0;
  std::size_t batch = 0;
  std::size_t size = 0;
  double sentiment_loss = 0.0;  // batch means
  double rule_loss = 0.0;
  double total_loss = 0.0;  // value of the loss that was backpropagated
};

struct EpochRecord {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  std::optional<MetricsReport> validation;
};

struct TrainResult {
  explicit TrainResult(Classifier m) : model(std::move(m)) {}

  Classifier model;
  std::optional<MetricsReport> validation;  // best-epoch report; empty without a validation split
  std::size_t best_epoch = 0;
  std::size_t training_samples = 0;  // after augmentation
  std::vector<EpochRecord> epochs;
  std::vector<BatchRecord> batches;
  std::vector<AugmentConflict> conflicts;
};

using EpochObserver = std::function<void(const EpochRecord&)>;

// Train split after augmentation (per the variant flags).
AugmentResult training_samples(const Dataset& dataset, const TrainConfig& config,
                               const Resources& resources);

// Untrained classifier with vocabularies built from `samples`.
Classifier build_classifier(const std::vector<LabeledMessage>& samples, const TrainConfig& config,
                            const Resources& resources);

/// Mini-batch SGD on the train split. After every epoch the validation split
/// (if any) is scored; the parameters with the best macro/micro F are kept
/// and training stops after `patience` epochs without improvement.
TrainResult train(const Dataset& dataset, const TrainConfig& config, const Resources& resources,
                  const EpochObserver& observer = {});

}  // namespace saint
