#include "saint/models/sentiment_net.hpp"

#include <algorithm>
#include <cmath>

#include "saint/embedding/vocabulary.hpp"
#include "saint/errors.hpp"
#include "saint/tensor/ops.hpp"
#include "saint/text/labels.hpp"

namespace saint {

LinearHead LinearHead::init(std::size_t out, std::size_t in, std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<double> w(out * in);
  for (auto& v : w) v = dist(rng);
  return {Tensor::from_values({out, in}, std::move(w), true), Tensor::zeros({out}, true)};
}

Tensor LinearHead::apply(const Tensor& x) const { return add(matvec(weight, x), bias); }

SentimentNet::SentimentNet(const ModelConfig& config, EmbeddingMatrix words,
                           std::size_t char_vocab_size)
    : config_(config), words_(std::move(words)), dropout_rng_(config.seed ^ 0xD1B54A32D192ED03ULL) {
  if (config_.sequence_length == 0) throw ConfigError("sequence length must be positive");
  if (words_.dim() != config_.word_dim) {
    throw ConfigError("embedding width " + std::to_string(words_.dim()) +
                      " does not match word_dim " + std::to_string(config_.word_dim));
  }
  if (!(config_.drop_rate >= 0.0 && config_.drop_rate < 1.0)) {
    throw ConfigError("drop_rate must lie in [0, 1)");
  }
  std::mt19937_64 rng(config_.seed);
  if (config_.use_char) {
    chars_ = CharBiGruParams::init(char_vocab_size, config_.char_dim, config_.char_hidden, rng);
  }
  if (config_.encoder == EncoderKind::gru) {
    gru_ = GruCellParams::init(config_.input_width(), config_.gru_hidden, rng, config_.gru_bias);
  } else {
    if (config_.sequence_length % config_.cnn_pool != 0) {
      throw ConfigError("pooling window " + std::to_string(config_.cnn_pool) +
                        " does not divide sequence length " +
                        std::to_string(config_.sequence_length));
    }
    if (config_.cnn_height > config_.sequence_length) {
      throw ConfigError("filter height exceeds sequence length");
    }
    cnn_ = CnnEncoderParams::init(config_.input_width(), config_.cnn_filters, config_.cnn_height,
                                  config_.cnn_pool, rng, config_.cnn_activation);
  }
  sentiment_head_ = LinearHead::init(kSentimentClasses, feature_size(), rng);
  if (config_.multitask) rule_head_ = LinearHead::init(kRuleClasses, feature_size(), rng);
}

std::size_t SentimentNet::feature_size() const {
  if (config_.encoder == EncoderKind::gru) return config_.gru_hidden;
  return config_.sequence_length / config_.cnn_pool * config_.cnn_filters;
}

Tensor SentimentNet::drop(const Tensor& x, Mode mode) {
  DropoutSpec spec{config_.drop_rate, mode == Mode::train, 0};
  return dropout_apply(x, spec, dropout_rng_);
}

Tensor SentimentNet::represent(const EncodedMessage& message, Mode mode) {
  const std::size_t length = config_.sequence_length;
  if (message.word_ids.size() != length) {
    throw DimensionError("message has " + std::to_string(message.word_ids.size()) +
                         " word ids, model expects " + std::to_string(length));
  }
  Tensor words = embed_sequence(message.word_ids, words_);
  if (!config_.use_char) return words;

  const std::size_t width = chars_.output_size();
  Tensor chars;
  if (message.char_ids.empty() || message.word_ends.empty()) {
    chars = Tensor::zeros({length, width});
  } else {
    auto input_dropout = [this, mode](const Tensor& x) { return drop(x, mode); };
    Tensor all = encode_char_words(message.char_ids, message.word_ends, chars_, input_dropout);
    const std::size_t kept = std::min(all.dim(0), length);
    if (kept < all.dim(0)) all = slice(all, 0, 0, kept);
    chars = pad_rows(all, length);
  }
  return combine_word_char(words, chars);
}

Tensor SentimentNet::encode(const EncodedMessage& message, Mode mode) {
  Tensor input = drop(represent(message, mode), mode);
  if (config_.encoder == EncoderKind::cnn) return drop(cnn_encode(input, cnn_), mode);
  // The recurrent encoder stops at the last real token; trailing PAD steps
  // would only dilute the final state.
  const auto first_pad =
      std::find(message.word_ids.begin(), message.word_ids.end(), Vocabulary::kPad);
  const auto real = std::max<std::size_t>(1, first_pad - message.word_ids.begin());
  if (real < input.dim(0)) input = slice(input, 0, 0, real);
  Tensor features = gru_run(input, gru_).last;
  return drop(features, mode);
}

NetOutput SentimentNet::forward(const EncodedMessage& message, Mode mode) {
  Tensor features = encode(message, mode);
  NetOutput out;
  out.sentiment = softmax(sentiment_head_.apply(features));
  if (config_.multitask) out.rule = softmax(rule_head_.apply(features));
  return out;
}

std::vector<std::pair<std::string, Tensor>> SentimentNet::named_parameters() const {
  std::vector<std::pair<std::string, Tensor>> out;
  out.emplace_back("embedding", words_.weights());
  auto add_gru = [&out](const std::string& prefix, const GruCellParams& p) {
    out.emplace_back(prefix + ".w_reset", p.w_reset);
    out.emplace_back(prefix + ".u_reset", p.u_reset);
    out.emplace_back(prefix + ".w_update", p.w_update);
    out.emplace_back(prefix + ".u_update", p.u_update);
    out.emplace_back(prefix + ".w_candidate", p.w_candidate);
    out.emplace_back(prefix + ".u_candidate", p.u_candidate);
    if (p.has_bias()) {
      out.emplace_back(prefix + ".b_reset", p.b_reset);
      out.emplace_back(prefix + ".b_update", p.b_update);
      out.emplace_back(prefix + ".b_candidate", p.b_candidate);
    }
  };
  if (config_.use_char) {
    out.emplace_back("char.table", chars_.table);
    add_gru("char.forward", chars_.forward);
    add_gru("char.backward", chars_.backward);
  }
  if (config_.encoder == EncoderKind::gru) {
    add_gru("gru", gru_);
  } else {
    out.emplace_back("cnn.filters", cnn_.filters);
    out.emplace_back("cnn.bias", cnn_.bias);
  }
  out.emplace_back("sentiment_head.weight", sentiment_head_.weight);
  out.emplace_back("sentiment_head.bias", sentiment_head_.bias);
  if (config_.multitask) {
    out.emplace_back("rule_head.weight", rule_head_.weight);
    out.emplace_back("rule_head.bias", rule_head_.bias);
  }
  return out;
}

std::vector<Tensor> SentimentNet::parameters() const {
  std::vector<Tensor> out;
  for (auto& [name, t] : named_parameters()) out.push_back(t);
  return out;
}

std::pair<Tensor, Tensor> forward_multitask(const EncodedMessage& message, SentimentNet& net,
                                            Mode mode) {
  if (!net.config().multitask) throw ConfigError("network was built without the rule head");
  auto out = net.forward(message, mode);
  return {out.sentiment, out.rule};
}

}  // namespace saint
