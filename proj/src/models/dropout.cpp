#include "saint/models/dropout.hpp"

#include <string>

#include "saint/errors.hpp"
#include "saint/tensor/ops.hpp"

namespace saint {

Tensor dropout_apply(const Tensor& x, const DropoutSpec& spec, std::mt19937_64& rng) {
  if (!(spec.drop_rate >= 0.0 && spec.drop_rate < 1.0)) {
    throw ConfigError("drop_rate must lie in [0, 1), got " + std::to_string(spec.drop_rate));
  }
  if (!spec.training || spec.drop_rate == 0.0) return x;
  const double keep_scale = 1.0 / (1.0 - spec.drop_rate);
  std::bernoulli_distribution drop(spec.drop_rate);
  std::vector<double> mask(x.size());
  for (auto& m : mask) m = drop(rng) ? 0.0 : keep_scale;
  return hadamard(x, Tensor::from_values(x.shape(), std::move(mask)));
}

Tensor dropout_apply(const Tensor& x, const DropoutSpec& spec) {
  std::mt19937_64 rng(spec.rng_seed);
  return dropout_apply(x, spec, rng);
}

}  // namespace saint
