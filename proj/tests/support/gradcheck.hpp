#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "saint/tensor/ops.hpp"
#include "saint/tensor/sgd.hpp"
#include "saint/tensor/tape.hpp"
#include "saint/tensor/tensor.hpp"

namespace saint::testing {

inline constexpr double kFiniteDifferenceStep = 1e-5;

// |a - n| / max(|a|, |n|, floor)
inline double relative_error(double analytic, double numeric, double floor = 1e-6) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / scale;
}

struct GradCheck {
  double max_error = 0.0;
  std::size_t worst_param = 0;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
};

// Compares backward() against central differences for every entry of every
// parameter. `loss` must rebuild the scalar from the current values.
inline GradCheck grad_check(const std::function<Tensor()>& loss, std::vector<Tensor> params,
                            double step = kFiniteDifferenceStep) {
  zero_grad(params);
  backward(loss());
  std::vector<std::vector<double>> analytic;
  for (const auto& p : params) analytic.emplace_back(p.grad().begin(), p.grad().end());

  GradCheck out;
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto values = params[k].mutable_values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + step;
      const double up = loss().item();
      values[i] = saved - step;
      const double down = loss().item();
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double err = relative_error(analytic[k][i], numeric);
      ++out.checked;
      if (err > out.max_error) {
        out.max_error = err;
        out.worst_param = k;
        out.worst_index = i;
      }
    }
  }
  zero_grad(params);
  return out;
}

inline Tensor random_tensor(const Shape& shape, std::mt19937_64& rng, double lo = -2.0,
                            double hi = 2.0, bool requires_grad = true) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(shape_size(shape));
  for (auto& x : v) x = dist(rng);
  return Tensor::from_values(shape, std::move(v), requires_grad);
}

// Fixed random linear functional sum(out ⊙ w) so every output entry matters.
inline Tensor project(const Tensor& out, std::uint64_t seed = 99) {
  std::mt19937_64 rng(seed);
  Tensor w = random_tensor(out.shape(), rng, -1.0, 1.0, false);
  return sum(hadamard(out, w));
}

}  // namespace saint::testing
