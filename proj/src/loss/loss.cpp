#include "saint/loss/loss.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "saint/errors.hpp"
#include "saint/tensor/ops.hpp"

namespace saint {

namespace {

void validate_weights(const PenaltyMatrix::Weights& w) {
  for (std::size_t p = 0; p < kSentimentClasses; ++p) {
    for (std::size_t t = 0; t < kSentimentClasses; ++t) {
      if (!std::isfinite(w[p][t]) || w[p][t] < 1.0) {
        throw ConfigError("penalty weights must be >= 1, entry (" + std::to_string(p) + ", " +
                          std::to_string(t) + ") is " + std::to_string(w[p][t]));
      }
    }
    if (w[p][p] != 1.0) {
      throw ConfigError("penalty diagonal must be 1, entry " + std::to_string(p) + " is " +
                        std::to_string(w[p][p]));
    }
  }
}

std::size_t hot_index(const Tensor& y) {
  if (y.rank() != 1) throw ContractError("label must be a vector, got " + shape_to_string(y.shape()));
  std::size_t hot = y.size();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double v = y.values()[i];
    if (v == 1.0 && hot == y.size()) {
      hot = i;
    } else if (v != 0.0) {
      throw ContractError("label vector is not one-hot");
    }
  }
  if (hot == y.size()) throw ContractError("label vector is not one-hot");
  return hot;
}

void validate_probabilities(const Tensor& y_hat, std::size_t classes) {
  if (y_hat.rank() != 1 || y_hat.size() != classes) {
    throw ContractError("prediction " + shape_to_string(y_hat.shape()) + " does not match " +
                        std::to_string(classes) + " classes");
  }
  double total = 0.0;
  for (double p : y_hat.values()) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("prediction entry outside [0, 1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw ContractError("prediction does not sum to 1 (sum " + std::to_string(total) + ")");
  }
}

}  // namespace

PenaltyMatrix::PenaltyMatrix()
    : weights_{{{1.0, 2.5, 2.0}, {2.5, 1.0, 2.0}, {1.5, 1.5, 1.0}}} {}

PenaltyMatrix::PenaltyMatrix(const Weights& weights) : weights_(weights) {
  validate_weights(weights_);
}

PenaltyMatrix PenaltyMatrix::uniform() {
  return PenaltyMatrix(Weights{{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}});
}

PenaltyMatrix PenaltyMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read penalty matrix " + path.string());
  Weights w{};
  std::string line;
  std::size_t row_index = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (row_index == kSentimentClasses) throw FormatError("penalty matrix has more than 3 rows");
    std::istringstream fields(line);
    for (std::size_t c = 0; c < kSentimentClasses; ++c) {
      if (!(fields >> w[row_index][c])) {
        throw FormatError("penalty matrix row " + std::to_string(row_index) + " needs 3 numbers");
      }
    }
    std::string extra;
    if (fields >> extra) throw FormatError("penalty matrix row has more than 3 numbers");
    ++row_index;
  }
  if (row_index != kSentimentClasses) throw FormatError("penalty matrix needs 3 rows");
  return PenaltyMatrix(w);
}

PenaltyMatrix PenaltyMatrix::load_or_default(const std::filesystem::path& path) {
  return path.empty() ? PenaltyMatrix() : load(path);
}

double PenaltyMatrix::weight(std::size_t predicted, std::size_t truth) const {
  if (predicted >= kSentimentClasses || truth >= kSentimentClasses) {
    throw InputError("penalty index out of range");
  }
  return weights_[predicted][truth];
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw InputError("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

Tensor cross_entropy(const Tensor& y, const Tensor& y_hat) {
  const std::size_t hot = hot_index(y);
  validate_probabilities(y_hat, y.size());
  return scale(ln(clamp_min(select(y_hat, hot), kProbabilityFloor)), -1.0);
}

Tensor cross_entropy(std::size_t true_index, const Tensor& y_hat) {
  if (true_index >= y_hat.size()) throw ContractError("true class index out of range");
  validate_probabilities(y_hat, y_hat.size());
  return scale(ln(clamp_min(select(y_hat, true_index), kProbabilityFloor)), -1.0);
}

Tensor weighted_cross_entropy(const Tensor& y, const Tensor& y_hat, const PenaltyMatrix& penalty) {
  const std::size_t hot = hot_index(y);
  if (y.size() != kSentimentClasses) {
    throw ContractError("weighted cross-entropy is defined for the 3 sentiment classes");
  }
  return weighted_cross_entropy(hot, y_hat, penalty);
}

Tensor weighted_cross_entropy(std::size_t true_index, const Tensor& y_hat,
                              const PenaltyMatrix& penalty) {
  if (y_hat.size() != kSentimentClasses) {
    throw ContractError("weighted cross-entropy is defined for the 3 sentiment classes");
  }
  const double w = penalty.weight(argmax(y_hat.values()), true_index);
  Tensor plain = cross_entropy(true_index, y_hat);
  return w == 1.0 ? plain : scale(plain, w);
}

Tensor multitask_loss(const Tensor& sentiment_loss, const Tensor& rule_loss) {
  if (sentiment_loss.size() != 1 || rule_loss.size() != 1) {
    throw ContractError("multitask_loss expects scalar losses");
  }
  return add(sentiment_loss, rule_loss);
}

Tensor mean_loss(std::span<const Tensor> losses) {
  if (losses.empty()) throw InputError("mean of zero losses");
  Tensor total = losses[0];
  for (std::size_t i = 1; i < losses.size(); ++i) total = add(total, losses[i]);
  return scale(total, 1.0 / static_cast<double>(losses.size()));
}

Tensor one_hot_tensor(Sentiment s) {
  const auto v = one_hot(s);
  return Tensor::from_values({kSentimentClasses}, {v.begin(), v.end()});
}

Tensor one_hot_tensor(RuleLabel r) {
  const auto v = one_hot(r);
  return Tensor::from_values({kRuleClasses}, {v.begin(), v.end()});
}

}  // namespace saint
