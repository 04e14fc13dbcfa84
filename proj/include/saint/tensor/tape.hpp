#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "saint/tensor/tensor.hpp"

namespace saint {

/// Topologically ordered record of the operations that produced a tensor.
///
/// Entries are graph nodes that require grad; every entry appears after all
/// of its inputs. Leaves are included so the tape covers every tensor whose
/// gradient the backward pass writes.
class ComputationTape {
 public:
  static ComputationTape record(const Tensor& output);

  std::size_t size() const { return entries_.size(); }
  std::span<const detail::Node* const> entries() const { return entries_; }
  // Number of entries produced by an operation (i.e. excluding leaves).
  std::size_t operation_count() const;

  // Seeds d(output)/d(output) = 1 and walks the tape in reverse. Gradients of
  // intermediate results are reset first; leaf gradients accumulate. Returns
  // the number of backward functions invoked.
  std::size_t run_backward();

 private:
  std::vector<const detail::Node*> entries_;
  detail::Node* output_ = nullptr;
};

// Backpropagates from a single-element loss into every reachable tensor that
// requires grad. Leaf gradients accumulate across calls until zero_grad.
void backward(const Tensor& loss);

}  // namespace saint
