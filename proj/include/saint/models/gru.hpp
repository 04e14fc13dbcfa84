#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "saint/tensor/tensor.hpp"

namespace saint {

/// Parameters of one GRU cell:
///
///   r = sigmoid(W_r x + U_r h)
///   z = sigmoid(W_z x + U_z h)
///   c = tanh(W x + U (r * h))
///   h' = (1 - z) * h + z * c
///
/// W-family matrices are [hidden x input], U-family [hidden x hidden]. Bias
/// vectors are optional and absent by default.
struct GruCellParams {
  Tensor w_reset, u_reset;
  Tensor w_update, u_update;
  Tensor w_candidate, u_candidate;
  Tensor b_reset, b_update, b_candidate;  // undefined unless with_bias

  static GruCellParams init(std::size_t input_size, std::size_t hidden_size, std::mt19937_64& rng,
                            bool with_bias = false);
  static GruCellParams zeros(std::size_t input_size, std::size_t hidden_size,
                             bool with_bias = false);

  std::size_t input_size() const { return w_reset.dim(1); }
  std::size_t hidden_size() const { return w_reset.dim(0); }
  bool has_bias() const { return b_reset.defined(); }
  std::vector<Tensor> parameters() const;
};

// Every intermediate of one cell step.
struct GruStep {
  Tensor reset;
  Tensor update;
  Tensor candidate;
  Tensor state;
};

// One step. `forced_update` replaces the computed update gate z, which lets
// callers pin z to 0 or 1.
GruStep gru_cell_forward(const Tensor& x, const Tensor& h_prev, const GruCellParams& params,
                         const std::optional<Tensor>& forced_update = std::nullopt);
Tensor gru_cell_step(const Tensor& x, const Tensor& h_prev, const GruCellParams& params);

// Runs the cell over rank-1 inputs in order; returns one state per input.
std::vector<Tensor> gru_states(std::span<const Tensor> inputs, const GruCellParams& params,
                               const std::optional<Tensor>& h0 = std::nullopt);

struct GruRun {
  Tensor states;  // [N x hidden]
  Tensor last;    // [hidden]
};

// inputs is [N x input]; h0 defaults to zeros.
GruRun gru_run(const Tensor& inputs, const GruCellParams& params,
               const std::optional<Tensor>& h0 = std::nullopt);

// Row t is concat(forward state t, backward state t); the backward cell reads
// the sequence right to left and its states are re-aligned to positions.
Tensor bigru_run(const Tensor& inputs, const GruCellParams& forward,
                 const GruCellParams& backward);

}  // namespace saint
