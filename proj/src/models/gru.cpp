#include "saint/models/gru.hpp"

#include <algorithm>
#include <cmath>

#include "saint/errors.hpp"
#include "saint/tensor/ops.hpp"

namespace saint {

namespace {

Tensor uniform(Shape shape, double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<double> values(shape_size(shape));
  for (auto& v : values) v = dist(rng);
  return Tensor::from_values(std::move(shape), std::move(values), true);
}

Tensor gate_preactivation(const Tensor& w, const Tensor& x, const Tensor& u, const Tensor& h,
                          const Tensor& bias) {
  Tensor pre = add(matvec(w, x), matvec(u, h));
  return bias.defined() ? add(pre, bias) : pre;
}

}  // namespace

GruCellParams GruCellParams::init(std::size_t input_size, std::size_t hidden_size,
                                  std::mt19937_64& rng, bool with_bias) {
  if (input_size == 0 || hidden_size == 0) throw ConfigError("GRU sizes must be positive");
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden_size));
  GruCellParams p;
  p.w_reset = uniform({hidden_size, input_size}, bound, rng);
  p.u_reset = uniform({hidden_size, hidden_size}, bound, rng);
  p.w_update = uniform({hidden_size, input_size}, bound, rng);
  p.u_update = uniform({hidden_size, hidden_size}, bound, rng);
  p.w_candidate = uniform({hidden_size, input_size}, bound, rng);
  p.u_candidate = uniform({hidden_size, hidden_size}, bound, rng);
  if (with_bias) {
    p.b_reset = Tensor::zeros({hidden_size}, true);
    p.b_update = Tensor::zeros({hidden_size}, true);
    p.b_candidate = Tensor::zeros({hidden_size}, true);
  }
  return p;
}

GruCellParams GruCellParams::zeros(std::size_t input_size, std::size_t hidden_size,
                                   bool with_bias) {
  GruCellParams p;
  p.w_reset = Tensor::zeros({hidden_size, input_size}, true);
  p.u_reset = Tensor::zeros({hidden_size, hidden_size}, true);
  p.w_update = Tensor::zeros({hidden_size, input_size}, true);
  p.u_update = Tensor::zeros({hidden_size, hidden_size}, true);
  p.w_candidate = Tensor::zeros({hidden_size, input_size}, true);
  p.u_candidate = Tensor::zeros({hidden_size, hidden_size}, true);
  if (with_bias) {
    p.b_reset = Tensor::zeros({hidden_size}, true);
    p.b_update = Tensor::zeros({hidden_size}, true);
    p.b_candidate = Tensor::zeros({hidden_size}, true);
  }
  return p;
}

std::vector<Tensor> GruCellParams::parameters() const {
  std::vector<Tensor> out{w_reset, u_reset, w_update, u_update, w_candidate, u_candidate};
  if (has_bias()) {
    out.push_back(b_reset);
    out.push_back(b_update);
    out.push_back(b_candidate);
  }
  return out;
}

GruStep gru_cell_forward(const Tensor& x, const Tensor& h_prev, const GruCellParams& params,
                         const std::optional<Tensor>& forced_update) {
  if (x.rank() != 1 || x.dim(0) != params.input_size()) {
    throw DimensionError("GRU input " + shape_to_string(x.shape()) + " does not match input size " +
                         std::to_string(params.input_size()));
  }
  if (h_prev.rank() != 1 || h_prev.dim(0) != params.hidden_size()) {
    throw DimensionError("GRU state " + shape_to_string(h_prev.shape()) +
                         " does not match hidden size " + std::to_string(params.hidden_size()));
  }
  GruStep step;
  step.reset = sigmoid(gate_preactivation(params.w_reset, x, params.u_reset, h_prev, params.b_reset));
  if (forced_update) {
    if (forced_update->shape() != h_prev.shape()) {
      throw DimensionError("forced update gate has shape " +
                           shape_to_string(forced_update->shape()));
    }
    step.update = *forced_update;
  } else {
    step.update =
        sigmoid(gate_preactivation(params.w_update, x, params.u_update, h_prev, params.b_update));
  }
  step.candidate = tanh(gate_preactivation(params.w_candidate, x, params.u_candidate,
                                           hadamard(step.reset, h_prev), params.b_candidate));
  // (1 - z) * h_prev + z * candidate, kept in this form so z = 0 and z = 1
  // reproduce h_prev and the candidate exactly.
  step.state = add(hadamard(affine(step.update, -1.0, 1.0), h_prev),
                   hadamard(step.update, step.candidate));
  return step;
}

Tensor gru_cell_step(const Tensor& x, const Tensor& h_prev, const GruCellParams& params) {
  return gru_cell_forward(x, h_prev, params).state;
}

std::vector<Tensor> gru_states(std::span<const Tensor> inputs, const GruCellParams& params,
                               const std::optional<Tensor>& h0) {
  if (inputs.empty()) throw InputError("GRU run over an empty sequence");
  Tensor h = h0 ? *h0 : Tensor::zeros({params.hidden_size()});
  std::vector<Tensor> states;
  states.reserve(inputs.size());
  for (const auto& x : inputs) {
    h = gru_cell_step(x, h, params);
    states.push_back(h);
  }
  return states;
}

namespace {

std::vector<Tensor> split_rows(const Tensor& inputs) {
  if (inputs.rank() != 2) {
    throw DimensionError("GRU inputs must be [N x input], got " + shape_to_string(inputs.shape()));
  }
  std::vector<Tensor> rows;
  rows.reserve(inputs.dim(0));
  for (std::size_t t = 0; t < inputs.dim(0); ++t) rows.push_back(row(inputs, t));
  return rows;
}

}  // namespace

GruRun gru_run(const Tensor& inputs, const GruCellParams& params, const std::optional<Tensor>& h0) {
  auto states = gru_states(split_rows(inputs), params, h0);
  GruRun run;
  run.last = states.back();
  run.states = stack_rows(states);
  return run;
}

Tensor bigru_run(const Tensor& inputs, const GruCellParams& forward,
                 const GruCellParams& backward) {
  auto rows = split_rows(inputs);
  auto fwd = gru_states(rows, forward);
  std::reverse(rows.begin(), rows.end());
  auto bwd = gru_states(rows, backward);
  std::reverse(bwd.begin(), bwd.end());
  std::vector<Tensor> out;
  out.reserve(fwd.size());
  for (std::size_t t = 0; t < fwd.size(); ++t) out.push_back(concat({fwd[t], bwd[t]}, 0));
  return stack_rows(out);
}

}  // namespace saint
