#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "saint/charenc/char_encoder.hpp"
#include "saint/embedding/embedding.hpp"
#include "saint/models/cnn.hpp"
#include "saint/models/dropout.hpp"
#include "saint/models/gru.hpp"
#include "saint/tensor/tensor.hpp"

namespace saint {

enum class EncoderKind { cnn, gru };
enum class Mode { train, infer };

struct ModelConfig {
  EncoderKind encoder = EncoderKind::gru;
  std::size_t sequence_length = 10;
  std::size_t word_dim = 320;
  bool use_char = true;
  std::size_t char_dim = 24;
  std::size_t char_hidden = 50;  // per direction; the char vector is 2x this
  std::size_t gru_hidden = 200;
  bool gru_bias = false;
  std::size_t cnn_filters = 64;
  std::size_t cnn_height = 3;
  std::size_t cnn_pool = 2;
  Activation cnn_activation = Activation::relu;
  bool multitask = true;
  double drop_rate = 0.3;
  std::uint64_t seed = 1;

  // Width of one row of the combined word(+char) representation.
  std::size_t input_width() const { return word_dim + (use_char ? 2 * char_hidden : 0); }
};

// A message after preprocessing: exactly sequence_length word ids plus the
// character ids and per-word end positions of the whole message.
struct EncodedMessage {
  std::vector<std::size_t> word_ids;
  std::vector<std::size_t> char_ids;
  std::vector<std::size_t> word_ends;
};

// Fully connected layer W x + b.
struct LinearHead {
  Tensor weight;  // [out x in]
  Tensor bias;    // [out]

  static LinearHead init(std::size_t out, std::size_t in, std::mt19937_64& rng);
  Tensor apply(const Tensor& x) const;
};

struct NetOutput {
  Tensor sentiment;  // [3] probabilities
  Tensor rule;       // [4] probabilities; undefined unless multitask
};

/// Embedding lookup (+ character Bi-GRU) -> CNN or GRU encoder -> softmax
/// heads. Dropout is applied to the input of each layer in train mode.
///
/// With multitask enabled the rule head reads the same encoder output as the
/// sentiment head; the heads share no parameters.
class SentimentNet {
 public:
  SentimentNet(const ModelConfig& config, EmbeddingMatrix words, std::size_t char_vocab_size);

  const ModelConfig& config() const { return config_; }

  // [L x input_width] combined representation (no dropout).
  Tensor represent(const EncodedMessage& message, Mode mode);
  // Encoder output fed to the heads.
  Tensor encode(const EncodedMessage& message, Mode mode);
  NetOutput forward(const EncodedMessage& message, Mode mode);

  std::size_t feature_size() const;

  EmbeddingMatrix& embeddings() { return words_; }
  const EmbeddingMatrix& embeddings() const { return words_; }
  CharBiGruParams& char_params() { return chars_; }
  GruCellParams& gru_params() { return gru_; }
  CnnEncoderParams& cnn_params() { return cnn_; }
  LinearHead& sentiment_head() { return sentiment_head_; }
  LinearHead& rule_head() { return rule_head_; }

  // Stable names; the checkpoint format relies on this order.
  std::vector<std::pair<std::string, Tensor>> named_parameters() const;
  std::vector<Tensor> parameters() const;

  void reseed_dropout(std::uint64_t seed) { dropout_rng_.seed(seed); }

 private:
  Tensor drop(const Tensor& x, Mode mode);

  ModelConfig config_;
  EmbeddingMatrix words_;
  CharBiGruParams chars_;
  GruCellParams gru_;
  CnnEncoderParams cnn_;
  LinearHead sentiment_head_;
  LinearHead rule_head_;
  std::mt19937_64 dropout_rng_;
};

// Both heads from one shared pass. Throws ConfigError unless the net was
// built with multitask enabled.
std::pair<Tensor, Tensor> forward_multitask(const EncodedMessage& message, SentimentNet& net,
                                            Mode mode);

}  // namespace saint
