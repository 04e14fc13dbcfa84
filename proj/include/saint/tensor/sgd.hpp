#pragma once

#include <cstdint>
#include <span>

#include "saint/tensor/tensor.hpp"

namespace saint {

// p <- p - learning_rate * grad(p) for every parameter that requires grad.
// Parameters that do not require grad (e.g. frozen embeddings) are skipped.
void sgd_step(std::span<Tensor> params, double learning_rate);

void zero_grad(std::span<Tensor> params);

// FNV-1a over the raw bytes of the values; used to prove weights did not move.
std::uint64_t checksum(const Tensor& t);

}  // namespace saint
