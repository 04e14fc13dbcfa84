#include "saint/models/cnn.hpp"

#include <cmath>

#include "saint/errors.hpp"
#include "saint/tensor/ops.hpp"

namespace saint {

CnnEncoderParams CnnEncoderParams::init(std::size_t embed_dim, std::size_t filter_count,
                                        std::size_t filter_height, std::size_t pool_window,
                                        std::mt19937_64& rng, Activation activation) {
  if (embed_dim == 0 || filter_count == 0 || filter_height == 0 || pool_window == 0) {
    throw ConfigError("CNN dimensions must be positive");
  }
  const double bound = 1.0 / std::sqrt(static_cast<double>(filter_height * embed_dim));
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<double> w(filter_count * filter_height * embed_dim);
  for (auto& v : w) v = dist(rng);
  CnnEncoderParams p;
  p.filters = Tensor::from_values({filter_count, filter_height, embed_dim}, std::move(w), true);
  p.bias = Tensor::zeros({filter_count}, true);
  p.pool_window = pool_window;
  p.activation = activation;
  return p;
}

Tensor activate(const Tensor& x, Activation activation) {
  switch (activation) {
    case Activation::relu: return relu(x);
    case Activation::tanh: return tanh(x);
    case Activation::sigmoid: return sigmoid(x);
  }
  return x;
}

Tensor cnn_encode(const Tensor& embedded, const CnnEncoderParams& params) {
  if (embedded.rank() != 2) {
    throw DimensionError("cnn_encode expects [N x K], got " + shape_to_string(embedded.shape()));
  }
  const std::size_t n = embedded.dim(0);
  if (params.pool_window == 0 || n % params.pool_window != 0) {
    throw ConfigError("pooling window " + std::to_string(params.pool_window) +
                      " does not divide sequence length " + std::to_string(n));
  }
  if (params.filter_height() > n) {
    throw DimensionError("filter height " + std::to_string(params.filter_height()) +
                         " exceeds sequence length " + std::to_string(n));
  }
  Tensor features = activate(conv_rows(embedded, params.filters, params.bias), params.activation);
  Tensor pooled = max_pool_rows(pad_rows(features, n), params.pool_window);
  return flatten(pooled);
}

}  // namespace saint
