#include "saint/embedding/skipgram.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "saint/errors.hpp"

namespace saint {

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

// Cumulative unigram^0.75 distribution over non-PAD rows.
std::vector<double> noise_distribution(const std::vector<std::vector<std::size_t>>& corpus,
                                       std::size_t rows) {
  std::vector<double> counts(rows, 0.0);
  for (const auto& s : corpus) {
    for (auto id : s) {
      if (id != Vocabulary::kPad) counts[id] += 1.0;
    }
  }
  std::vector<double> cumulative(rows, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    total += std::pow(counts[i], 0.75);
    cumulative[i] = total;
  }
  return cumulative;
}

}  // namespace

std::vector<SkipGramPair> generate_skipgram_pairs(std::span<const std::size_t> tokens,
                                                  std::size_t window_radius) {
  std::vector<SkipGramPair> pairs;
  const std::size_t n = tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (tokens[i] == Vocabulary::kPad) continue;
    const std::size_t lo = i >= window_radius ? i - window_radius : 0;
    const std::size_t hi = std::min(n - 1, i + window_radius);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j == i || tokens[j] == Vocabulary::kPad) continue;
      pairs.emplace_back(tokens[i], tokens[j]);
    }
  }
  return pairs;
}

EmbeddingMatrix train_skipgram(const std::vector<std::vector<std::size_t>>& corpus,
                               const Vocabulary& vocab, const SkipGramConfig& config) {
  if (!vocab.built()) throw StateError("train_skipgram needs a built vocabulary");
  if (config.window_radius < 1) throw ConfigError("window_radius must be at least 1");
  if (config.dim == 0) throw ConfigError("embedding dimension must be positive");
  if (!(config.learning_rate > 0.0)) throw ConfigError("skip-gram learning rate must be positive");
  const std::size_t rows = vocab.size();
  const std::size_t k = config.dim;
  for (const auto& s : corpus) {
    for (auto id : s) {
      if (id >= rows) throw InputError("corpus index " + std::to_string(id) + " out of vocabulary");
    }
  }

  EmbeddingMatrix matrix = EmbeddingMatrix::random(rows, k, config.rng_seed);
  if (config.epochs == 0) return matrix;

  std::vector<double> input(matrix.weights().values().begin(), matrix.weights().values().end());
  std::vector<double> output(rows * k, 0.0);
  std::mt19937_64 rng(config.rng_seed ^ 0x9E3779B97F4A7C15ULL);

  std::size_t total_pairs = 0;
  for (const auto& s : corpus) total_pairs += generate_skipgram_pairs(s, config.window_radius).size();
  const double total_steps = static_cast<double>(std::max<std::size_t>(1, total_pairs * config.epochs));
  std::size_t step = 0;

  const auto cumulative = noise_distribution(corpus, rows);
  const double noise_total = cumulative.back();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_noise = [&]() -> std::size_t {
    const double u = unit(rng) * noise_total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), rows - 1);
  };

  std::vector<double> center_grad(k);
  std::vector<double> probs(rows);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (const auto& sentence : corpus) {
      for (const auto& [center, context] : generate_skipgram_pairs(sentence, config.window_radius)) {
        const double lr = config.learning_rate *
                          std::max(1e-4, 1.0 - static_cast<double>(step++) / total_steps);
        double* w = &input[center * k];
        std::fill(center_grad.begin(), center_grad.end(), 0.0);
        if (config.negative_samples > 0) {
          for (std::size_t s = 0; s <= config.negative_samples; ++s) {
            std::size_t target = context;
            double label = 1.0;
            if (s > 0) {
              target = draw_noise();
              if (target == context || target == Vocabulary::kPad) continue;
              label = 0.0;
            }
            double* c = &output[target * k];
            const double g = lr * (label - sigmoid(dot(w, c, k)));
            for (std::size_t d = 0; d < k; ++d) {
              center_grad[d] += g * c[d];
              c[d] += g * w[d];
            }
          }
        } else {
          double top = -1e300;
          for (std::size_t r = 1; r < rows; ++r) {
            probs[r] = dot(w, &output[r * k], k);
            top = std::max(top, probs[r]);
          }
          double z = 0.0;
          for (std::size_t r = 1; r < rows; ++r) {
            probs[r] = std::exp(probs[r] - top);
            z += probs[r];
          }
          for (std::size_t r = 1; r < rows; ++r) {
            const double g = lr * ((r == context ? 1.0 : 0.0) - probs[r] / z);
            double* c = &output[r * k];
            for (std::size_t d = 0; d < k; ++d) {
              center_grad[d] += g * c[d];
              c[d] += g * w[d];
            }
          }
        }
        for (std::size_t d = 0; d < k; ++d) w[d] += center_grad[d];
      }
    }
  }
  std::fill(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
  return EmbeddingMatrix(Tensor::from_values({rows, k}, std::move(input)));
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("cosine of vectors with different lengths");
  const double ab = dot(a.data(), b.data(), a.size());
  const double aa = dot(a.data(), a.data(), a.size());
  const double bb = dot(b.data(), b.data(), b.size());
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace saint
