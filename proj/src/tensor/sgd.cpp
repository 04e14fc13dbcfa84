#include "saint/tensor/sgd.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "saint/errors.hpp"

namespace saint {

void sgd_step(std::span<Tensor> params, double learning_rate) {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be positive and finite, got " +
                      std::to_string(learning_rate));
  }
  for (auto& p : params) {
    if (!p.requires_grad()) continue;
    auto values = p.mutable_values();
    const auto grad = p.grad();
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= learning_rate * grad[i];
  }
}

void zero_grad(std::span<Tensor> params) {
  for (auto& p : params) p.zero_grad();
}

std::uint64_t checksum(const Tensor& t) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : t.values()) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace saint
