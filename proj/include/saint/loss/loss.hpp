#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>

#include "saint/tensor/tensor.hpp"
#include "saint/text/labels.hpp"

namespace saint {

/// Misclassification weights indexed [predicted][true] in the class order
/// positive, negative, neutral. Diagonal entries are 1; all entries >= 1.
class PenaltyMatrix {
 public:
  using Weights = std::array<std::array<double, kSentimentClasses>, kSentimentClasses>;

  // The default table:
  //   predicted positive: 1    2.5  2
  //   predicted negative: 2.5  1    2
  //   predicted neutral:  1.5  1.5  1
  PenaltyMatrix();
  explicit PenaltyMatrix(const Weights& weights);

  // All ones; weighted cross-entropy then equals plain cross-entropy.
  static PenaltyMatrix uniform();

  // Three lines of three numbers. Throws FormatError on malformed input and
  // ConfigError when the diagonal/lower-bound invariants fail.
  static PenaltyMatrix load(const std::filesystem::path& path);
  // Defaults when `path` is empty.
  static PenaltyMatrix load_or_default(const std::filesystem::path& path);

  double weight(std::size_t predicted, std::size_t truth) const;
  double weight(Sentiment predicted, Sentiment truth) const {
    return weight(index_of(predicted), index_of(truth));
  }
  const Weights& weights() const { return weights_; }

 private:
  Weights weights_;
};

inline constexpr double kProbabilityFloor = 1e-12;

// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

// -ln(y_hat[t]) where t is the hot index of y. The probability is clamped
// below at kProbabilityFloor. Throws ContractError if y is not one-hot or
// y_hat is not a probability vector of the same length.
Tensor cross_entropy(const Tensor& y, const Tensor& y_hat);
Tensor cross_entropy(std::size_t true_index, const Tensor& y_hat);

// P[argmax(y_hat)][argmax(y)] * cross_entropy(y, y_hat). The weight is a
// constant with respect to backward.
Tensor weighted_cross_entropy(const Tensor& y, const Tensor& y_hat, const PenaltyMatrix& penalty);
Tensor weighted_cross_entropy(std::size_t true_index, const Tensor& y_hat,
                              const PenaltyMatrix& penalty);

// Unweighted sum of the two task losses.
Tensor multitask_loss(const Tensor& sentiment_loss, const Tensor& rule_loss);

// Mean of single-element losses.
Tensor mean_loss(std::span<const Tensor> losses);

Tensor one_hot_tensor(Sentiment s);
Tensor one_hot_tensor(RuleLabel r);

}  // namespace saint
