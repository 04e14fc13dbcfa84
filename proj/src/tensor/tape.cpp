#include "saint/tensor/tape.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "saint/errors.hpp"

namespace saint {

ComputationTape ComputationTape::record(const Tensor& output) {
  ComputationTape tape;
  if (!output.defined()) throw StateError("cannot record an undefined tensor");
  auto* root = output.node().get();
  tape.output_ = root;
  if (!root->requires_grad) return tape;

  // Iterative post-order DFS; a node is emitted once all of its inputs are.
  std::unordered_set<const detail::Node*> visited;
  std::vector<std::pair<const detail::Node*, std::size_t>> stack;
  stack.emplace_back(root, 0);
  visited.insert(root);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      const detail::Node* child = node->inputs[next++].get();
      if (child->requires_grad && visited.insert(child).second) stack.emplace_back(child, 0);
      continue;
    }
    tape.entries_.push_back(node);
    stack.pop_back();
  }
  return tape;
}

std::size_t ComputationTape::operation_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const detail::Node* n) { return bool(n->backward); }));
}

std::size_t ComputationTape::run_backward() {
  if (output_ == nullptr || entries_.empty()) {
    throw ContractError("backward: output is not on the tape (it does not require grad)");
  }
  for (const auto* entry : entries_) {
    auto* node = const_cast<detail::Node*>(entry);
    if (node->backward) std::fill(node->grad.begin(), node->grad.end(), 0.0);
  }
  output_->grad[0] += 1.0;
  std::size_t calls = 0;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    auto* node = const_cast<detail::Node*>(*it);
    if (node->backward) {
      node->backward(*node);
      ++calls;
    }
  }
  return calls;
}

void backward(const Tensor& loss) {
  if (!loss.defined() || loss.size() != 1) {
    throw ContractError("backward needs a single-element loss, got shape " +
                        (loss.defined() ? shape_to_string(loss.shape()) : std::string("<undefined>")));
  }
  auto tape = ComputationTape::record(loss);
  tape.run_backward();
}

}  // namespace saint
