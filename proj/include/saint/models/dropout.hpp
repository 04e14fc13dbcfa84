#pragma once

#include <cstdint>
#include <random>

#include "saint/tensor/tensor.hpp"

namespace saint {

struct DropoutSpec {
  double drop_rate = 0.3;
  bool training = false;
  std::uint64_t rng_seed = 1;
};

// Inverted dropout: in training mode each entry is zeroed with probability
// drop_rate and survivors are scaled by 1 / (1 - drop_rate). Identity in
// inference mode or at rate 0. Throws ConfigError unless 0 <= rate < 1.
Tensor dropout_apply(const Tensor& x, const DropoutSpec& spec, std::mt19937_64& rng);
// Same, drawing the mask from a generator seeded with spec.rng_seed.
Tensor dropout_apply(const Tensor& x, const DropoutSpec& spec);

}  // namespace saint
