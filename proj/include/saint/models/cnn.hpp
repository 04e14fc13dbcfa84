#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "saint/tensor/tensor.hpp"

namespace saint {

enum class Activation { relu, tanh, sigmoid };

// f filters of size d x K with one bias each, followed by local max pooling
// over q consecutive positions.
struct CnnEncoderParams {
  Tensor filters;  // [f x d x K]
  Tensor bias;     // [f]
  std::size_t pool_window = 2;
  Activation activation = Activation::relu;

  static CnnEncoderParams init(std::size_t embed_dim, std::size_t filter_count,
                               std::size_t filter_height, std::size_t pool_window,
                               std::mt19937_64& rng, Activation activation = Activation::relu);

  std::size_t filter_count() const { return filters.dim(0); }
  std::size_t filter_height() const { return filters.dim(1); }
  std::size_t embed_dim() const { return filters.dim(2); }
  // p * f for a length-N input, p = N / q.
  std::size_t output_size(std::size_t sequence_length) const {
    return sequence_length / pool_window * filter_count();
  }
  std::vector<Tensor> parameters() const { return {filters, bias}; }
};

Tensor activate(const Tensor& x, Activation activation);

/// Convolves E [N x K] with every filter, applies the activation, zero-pads
/// each feature map from N-d+1 up to N entries, max-pools blocks of q rows
/// into Q [p x f] and flattens Q row-major into p * f features.
///
/// Throws ConfigError when q does not divide N and DimensionError when d > N.
Tensor cnn_encode(const Tensor& embedded, const CnnEncoderParams& params);

}  // namespace saint
