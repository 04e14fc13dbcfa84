#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "saint/models/sentiment_net.hpp"
#include "saint/pipeline/dataset.hpp"
#include "saint/pipeline/metrics.hpp"

namespace saint {

/// Enhancements switched on by a model variant.
struct VariantFlags {
  EncoderKind encoder = EncoderKind::cnn;
  bool term_augment = false;
  bool penalty = false;
  bool negation_augment = false;
  bool transfer = false;
  bool char_embedding = false;
  bool multitask = false;

  bool operator==(const VariantFlags&) const = default;
};

inline constexpr int kFirstVariant = 2;
inline constexpr int kLastVariant = 9;

// Ladder #2..#9; each variant keeps every enhancement of the one before.
// Throws ConfigError for any other id.
VariantFlags variant_flags(int variant);
std::string variant_name(int variant);

struct TrainConfig {
  int variant = 9;
  VariantFlags flags = variant_flags(9);

  std::size_t sequence_length = 10;
  std::size_t word_dim = 320;
  std::size_t char_dim = 24;
  std::size_t char_hidden = 50;
  std::size_t gru_hidden = 200;
  bool gru_bias = false;
  std::size_t cnn_filters = 64;
  std::size_t cnn_height = 3;
  std::size_t cnn_pool = 2;
  double drop_rate = 0.3;

  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  double learning_rate = 0.1;
  std::size_t patience = 5;  // 0 disables early stopping
  std::uint64_t seed = 1;

  std::size_t max_vocab = 65000;
  std::size_t max_variants = std::numeric_limits<std::size_t>::max();
  Averaging averaging = Averaging::macro;
  SplitRatios ratios;

  std::filesystem::path dictionary;
  std::filesystem::path antonyms;
  std::filesystem::path lexicon;
  std::filesystem::path patterns;
  std::filesystem::path embeddings;
  std::filesystem::path penalty;

  // Selects a ladder variant and resets the flags to match.
  void set_variant(int id);
  ModelConfig model_config() const;
  // Throws ConfigError on out-of-range values.
  void validate() const;
};

// Recognised keys are the field names above plus the individual flag names
// (encoder, term_augment, penalty_matrix, negation_augment, transfer,
// char_embedding, multitask). Throws ConfigError.
void apply_config_value(TrainConfig& config, std::string_view key, std::string_view value);
// key=value lines, '#' comments. Applied in file order.
void load_config_file(TrainConfig& config, const std::filesystem::path& path);
std::vector<std::string> config_keys();

}  // namespace saint
