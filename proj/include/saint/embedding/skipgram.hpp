#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "saint/embedding/embedding.hpp"
#include "saint/embedding/vocabulary.hpp"

namespace saint {

struct SkipGramConfig {
  std::size_t dim = EmbeddingMatrix::kDefaultDim;
  std::size_t window_radius = 4;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  // 0 selects the full softmax objective over the vocabulary.
  std::size_t negative_samples = 5;
  std::uint64_t rng_seed = 1;
};

using SkipGramPair = std::pair<std::size_t, std::size_t>;  // (center, context)

// All (t_i, t_j) with j != i and |i - j| <= radius, in position order.
// Positions holding PAD are skipped on both sides.
std::vector<SkipGramPair> generate_skipgram_pairs(std::span<const std::size_t> tokens,
                                                  std::size_t window_radius);

// Trains input vectors by predicting context words from the center word.
// Bitwise reproducible for a fixed rng_seed. The corpus is given as
// vocabulary indices; throws StateError if the vocabulary holds no tokens.
EmbeddingMatrix train_skipgram(const std::vector<std::vector<std::size_t>>& corpus,
                               const Vocabulary& vocab, const SkipGramConfig& config);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace saint
